"""The fan of recursion shifts: signed singular weights of the trivial module.

Each fan vector is rho - w(rho) for a non-identity affine Weyl element w,
stored as integer simple-root coordinates with a non-negative grade and
multiplicity -det(w).  Enumeration is a breadth-first walk over the orbit
of rho along strictly descending reflections; descent never raises the
grade, so pruning below the cutoff loses nothing within the window.

verify_denominator is the independent completeness gate: it expands the
truncated product over the positive affine roots and compares it term by
term with the fan.
"""

from __future__ import annotations

import weakref
from collections import deque
from dataclasses import dataclass
from math import comb

from .algebra import AffineWeight, AlgebraSpec, to_root_basis, weyl_vector
from .errors import ConfigurationError, ResourceLimitError

__all__ = ["Fan", "FanVector", "DenominatorReport", "build_fan", "verify_denominator"]

DEFAULT_NODE_LIMIT = 2_000_000


@dataclass(frozen=True)
class FanVector:
    """A signed shift: simple-root coordinates, grade >= 0, multiplicity."""

    root: tuple[int, ...]
    grade: int
    mult: int

    def __post_init__(self):
        object.__setattr__(self, "root", tuple(int(c) for c in self.root))
        object.__setattr__(self, "grade", int(self.grade))
        object.__setattr__(self, "mult", int(self.mult))


class Fan:
    """All fan vectors of one algebra up to a grade cutoff, sorted."""

    def __init__(self, algebra: AlgebraSpec, cutoff: int, vectors):
        self.algebra = algebra
        self.cutoff = int(cutoff)
        self.vectors = tuple(sorted(vectors, key=lambda v: (v.grade, v.root)))
        self._by_key = {(v.root, v.grade): v.mult for v in self.vectors}
        if len(self._by_key) != len(self.vectors):
            raise ConfigurationError("duplicate fan vectors")

    def mult(self, root, grade) -> int:
        return self._by_key.get((tuple(root), grade), 0)

    def layer(self, grade: int) -> tuple[FanVector, ...]:
        return tuple(v for v in self.vectors if v.grade == grade)

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __repr__(self):
        return f"Fan({self.algebra.label}, cutoff={self.cutoff}, {len(self)} vectors)"

    def to_json(self) -> list[dict]:
        return [
            {"root": list(v.root), "grade": v.grade, "mult": v.mult}
            for v in self.vectors
        ]

    @classmethod
    def from_json(cls, algebra: AlgebraSpec, cutoff: int, data) -> "Fan":
        return cls(
            algebra,
            cutoff,
            [FanVector(tuple(e["root"]), e["grade"], e["mult"]) for e in data],
        )


_fan_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def build_fan(
    spec: AlgebraSpec, cutoff: int, *, max_nodes: int = DEFAULT_NODE_LIMIT
) -> Fan:
    """Enumerate the fan exhaustively up to the grade cutoff.

    Built fans are immutable and cached per algebra instance; the cache
    only ever re-serves a value an identical call would recompute.
    """
    if cutoff < 0:
        raise ConfigurationError("fan cutoff must be non-negative")
    per_spec = _fan_cache.setdefault(spec, {})
    cached = per_spec.get(cutoff)
    if cached is not None:
        return cached
    rho = weyl_vector(spec)
    start = (rho.labels, rho.grade)
    parity = {start: 0}
    queue = deque([rho])
    vectors = []
    while queue:
        node = queue.popleft()
        node_parity = parity[(node.labels, node.grade)]
        labels = spec.affine_labels(node)
        for i, li in enumerate(labels):
            if li <= 0:
                continue
            child = _reflect_fast(spec, i, node, labels)
            if child.grade < -cutoff:
                continue
            key = (child.labels, child.grade)
            if key in parity:
                continue
            parity[key] = node_parity + 1
            if len(parity) > max_nodes:
                raise ResourceLimitError(
                    f"fan orbit exceeded {max_nodes} nodes at cutoff {cutoff}"
                )
            queue.append(child)
            vectors.append(_fan_vector(spec, rho, child, parity[key]))
    fan = Fan(spec, cutoff, vectors)
    per_spec[cutoff] = fan
    return fan


def _reflect_fast(spec, i, w, labels):
    # Inline of weyl.reflect, reusing the affine label vector.
    if i == 0:
        l0 = labels[0]
        new = tuple(x + l0 * t for x, t in zip(w.labels, spec.theta_labels))
        return AffineWeight(new, w.level, w.grade - l0)
    li = labels[i]
    new = tuple(x - li * spec.cartan[j][i - 1] for j, x in enumerate(w.labels))
    return AffineWeight(new, w.level, w.grade)


def _fan_vector(spec, rho, node, word_length) -> FanVector:
    shift = rho - node
    coords = to_root_basis(spec, shift)
    root = []
    for c in coords:
        if c.denominator != 1:
            raise ConfigurationError("fan shift left the root lattice")
        root.append(int(c))
    sign = -1 if word_length % 2 else 1
    return FanVector(tuple(root), int(-node.grade), -sign)


# -- denominator identity -------------------------------------------------


@dataclass(frozen=True)
class DenominatorReport:
    """Outcome of the truncated denominator check; falsy iff a term differs."""

    ok: bool
    mismatch: tuple | None = None
    checked_terms: int = 0

    def __bool__(self):
        return self.ok


def verify_denominator(fan: Fan) -> DenominatorReport:
    """Expand 1 - prod(1 - e^{-alpha})^{mult} to the cutoff and compare.

    The expansion never touches the Weyl group, so it is an independent
    oracle for both completeness and signs of the fan.
    """
    spec = fan.algebra
    cutoff = fan.cutoff
    series = _denominator_series(spec, cutoff)
    # 1 - R, truncated: negate and cancel the constant term.
    expected = {key: -c for key, c in series.items() if c}
    zero = ((0,) * spec.rank, 0)
    expected[zero] = expected.get(zero, 0) + 1
    expected = {k: v for k, v in expected.items() if v}
    got = {(v.root, v.grade): v.mult for v in fan}
    keys = sorted(set(expected) | set(got), key=lambda k: (k[1], k[0]))
    for key in keys:
        e = expected.get(key, 0)
        g = got.get(key, 0)
        if e != g:
            return DenominatorReport(False, (key[0], key[1], e, g), len(keys))
    return DenominatorReport(True, None, len(keys))


def _denominator_series(spec: AlgebraSpec, cutoff: int) -> dict:
    """Coefficients of prod over positive affine roots, by grade <= cutoff.

    Monomial keys are (simple-root coordinates, grade) of e^{-(root + grade*delta)}.
    Imaginary roots n*delta enter with multiplicity rank.
    """
    factors = []
    for root in spec.positive_roots:
        factors.append((root, 0, 1))
    for n in range(1, cutoff + 1):
        for root in spec.positive_roots:
            factors.append((root, n, 1))
            factors.append((tuple(-c for c in root), n, 1))
        if spec.rank:
            factors.append(((0,) * spec.rank, n, spec.rank))
    poly = {((0,) * spec.rank, 0): 1}
    for root, grade, mult in factors:
        poly = _multiply_factor(poly, root, grade, mult, cutoff)
    return poly


def _multiply_factor(poly, root, grade, mult, cutoff):
    """Multiply by (1 - x)^mult where x is the monomial (root, grade)."""
    out: dict = {}
    for (base_root, base_grade), coeff in poly.items():
        for j in range(mult + 1):
            new_grade = base_grade + j * grade
            if new_grade > cutoff:
                break
            term = coeff * comb(mult, j) * (-1 if j % 2 else 1)
            key = (
                tuple(b + j * r for b, r in zip(base_root, root)),
                new_grade,
            )
            new = out.get(key, 0) + term
            if new:
                out[key] = new
            elif key in out:
                del out[key]
    return out
