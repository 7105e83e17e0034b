"""Independent reference computations.

The Racah-type recursion below walks the unfolded fan directly, so it
shares nothing with the folding pipeline beyond the algebra data and the
chamber reduction.  It adjudicates table typos and is the second leg of
the two-path verification: folded solve and unfolded recursion must agree
exactly on every multiplicity.

The level-1 closed forms are pure q-series: the single string function
is the reciprocal of the squared Euler product, and the level-1 shift
multiplicities are its negated inverse series.
"""

from __future__ import annotations

import threading

from .algebra import AffineWeight, AlgebraSpec, RootVector, root_weight
from .errors import ConfigurationError, ConsistencyError, OutOfWindowError
from .fan import Fan
from .strings import classifier_for
from .weyl import to_dominant, to_dominant_shifted

__all__ = [
    "RacahOracle",
    "racah_multiplicity",
    "euler_square_series",
    "level1_eta_series",
]


def pentagonal_series(n: int) -> list[int]:
    """Coefficients of prod(1 - q^m) up to q^n (Euler's pentagonal expansion)."""
    if n < 0:
        raise ConfigurationError("series order must be >= 0")
    out = [0] * (n + 1)
    k = 0
    while True:
        hit = False
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e <= n:
                out[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def _convolve(a, b, n):
    out = [0] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n + 1 - i]):
            out[i + j] += ai * bj
    return out


def _reciprocal(a, n):
    if a[0] != 1:
        raise ConfigurationError("series reciprocal needs constant term 1")
    out = [0] * (n + 1)
    out[0] = 1
    for m in range(1, n + 1):
        out[m] = -sum(a[i] * out[m - i] for i in range(1, m + 1))
    return out


def euler_square_series(n: int) -> list[int]:
    """Coefficients of prod(1 - q^m)^{-2}: reciprocal of the squared pentagonal series."""
    phi = pentagonal_series(n)
    return _reciprocal(_convolve(phi, phi, n), n)


def level1_eta_series(n: int) -> list[int]:
    """Level-1 folded shift multiplicities: minus the squared Euler product.

    The level-1 string is the inverse squared Euler product, and the shift
    series times the string series is -1, hence this closed form.
    """
    phi = pentagonal_series(n)
    return [-c for c in _convolve(phi, phi, n)]


class RacahOracle:
    """Unfolded multiplicity recursion for one module, with memoization.

    Cache keys are dominant representatives only, so the number of states
    is bounded by (dominant classes at the level) x (grade window).
    """

    def __init__(self, spec: AlgebraSpec, mu: AffineWeight, fan: Fan):
        spec.check_rank(mu)
        if mu.grade != 0 or not spec.is_dominant(mu):
            raise ConfigurationError("highest weight must be dominant at grade 0")
        if fan.algebra is not spec:
            raise ConfigurationError("fan belongs to a different algebra")
        self.spec = spec
        self.mu = mu
        self.fan = fan
        self.mu_class = classifier_for(spec).id_of(mu.labels)
        self._cache: dict[tuple, int] = {}
        self._in_progress = threading.local()

    def multiplicity(self, lam: AffineWeight) -> int:
        spec = self.spec
        spec.check_rank(lam)
        if lam.level != self.mu.level:
            raise ConfigurationError("weight level does not match the module level")
        dom = to_dominant(spec, lam).dominant
        return self._dominant_multiplicity(dom)

    def _dominant_multiplicity(self, dom: AffineWeight) -> int:
        if dom.grade > 0:
            return 0
        if any(x.denominator != 1 for x in dom.labels):
            return 0
        if dom.grade < -self.fan.cutoff:
            raise OutOfWindowError(
                f"grade {dom.grade} is beyond the fan cutoff {self.fan.cutoff}"
            )
        if classifier_for(self.spec).id_of(dom.labels) != self.mu_class:
            return 0
        key = (dom.labels, dom.grade)
        if key in self._cache:
            return self._cache[key]
        # Cycle tripwire kept per thread: concurrent duplicate fills of the
        # idempotent cache are tolerated, genuine recursion cycles are not.
        active = getattr(self._in_progress, "keys", None)
        if active is None:
            active = self._in_progress.keys = set()
        if key in active:
            raise ConsistencyError(
                f"recursion cycle at {dom}; the fan violates well-foundedness"
            )
        active.add(key)
        try:
            total = self._singular_term(dom)
            for gamma in self.fan:
                shifted = dom + root_weight(self.spec, RootVector(gamma.root, gamma.grade))
                child = to_dominant(self.spec, shifted).dominant
                if child.grade > 0:
                    continue
                term = self._dominant_multiplicity(child)
                if term:
                    total += gamma.mult * term
        finally:
            active.discard(key)
        self._cache[key] = total
        return total

    def _singular_term(self, lam: AffineWeight) -> int:
        out = to_dominant_shifted(self.spec, lam)
        if out.on_wall:
            return 0
        if out.dominant.labels == self.mu.labels and out.dominant.grade == self.mu.grade:
            return out.sign
        return 0


def racah_multiplicity(
    spec: AlgebraSpec, mu: AffineWeight, lam: AffineWeight, fan: Fan
) -> int:
    """One-shot convenience wrapper; use RacahOracle for repeated queries."""
    return RacahOracle(spec, mu, fan).multiplicity(lam)
