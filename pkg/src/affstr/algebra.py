"""Cartan data and exact affine weight arithmetic.

A weight is stored as (classical Dynkin labels; level; grade), all exact
`Fraction` values.  The zeroth label is never stored: it is recovered from
the level as lambda_0 = level - sum(comark_i * label_i).  Simple-root
coordinates exist only for input/output; the conversion is an exact
application of the inverse Cartan matrix and round-trips losslessly.

No floating point is used anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError

__all__ = [
    "AffineWeight",
    "AlgebraSpec",
    "RootVector",
    "inner_product",
    "load_algebra",
    "preset",
    "to_root_basis",
    "from_root_basis",
    "weyl_vector",
]

_ROOT_CLOSURE_LIMIT = 100_000


def _norm(value):
    # Integral values are kept as machine ints: they hash and compare the
    # same as the equal Fraction but arithmetic on them is much faster.
    if isinstance(value, int):
        return value
    f = Fraction(value)
    return f.numerator if f.denominator == 1 else f


def _fracs(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class AffineWeight:
    """A weight (classical part; level; grade) in the Dynkin-label basis.

    Components are exact rationals, stored as int when integral.
    """

    labels: tuple
    level: object
    grade: object

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(_norm(x) for x in self.labels))
        object.__setattr__(self, "level", _norm(self.level))
        object.__setattr__(self, "grade", _norm(self.grade))

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            tuple(a + b for a, b in zip(self.labels, other.labels)),
            self.level + other.level,
            self.grade + other.grade,
        )

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            tuple(a - b for a, b in zip(self.labels, other.labels)),
            self.level - other.level,
            self.grade - other.grade,
        )

    def shift_grade(self, dn) -> "AffineWeight":
        return AffineWeight(self.labels, self.level, self.grade + Fraction(dn))

    def __repr__(self):
        lab = ",".join(str(x) for x in self.labels)
        return f"({lab};{self.level};{self.grade})"


@dataclass(frozen=True)
class RootVector:
    """A root-lattice vector: integer simple-root coordinates plus a grade.

    The level component of a root is always zero.
    """

    coords: tuple[int, ...]
    grade: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        object.__setattr__(self, "grade", int(self.grade))
        if self.grade < 0:
            raise ConfigurationError("root grade must be non-negative")


class AlgebraSpec:
    """Classical Cartan data with its untwisted affine extension.

    Derived data (positive roots, highest root, marks, comarks, the
    inverse Cartan matrix) is computed once at construction; instances
    are immutable afterwards and safe to share between threads.
    """

    def __init__(self, label: str, cartan, symmetrizer=None):
        self.label = str(label)
        self.cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        self.rank = len(self.cartan)
        self._validate_cartan()
        if symmetrizer is None:
            symmetrizer = self._derive_symmetrizer()
        self.symmetrizer = _fracs(symmetrizer)
        if len(self.symmetrizer) != self.rank or any(d <= 0 for d in self.symmetrizer):
            raise ConfigurationError("symmetrizer must be rank positive rationals")
        for i in range(self.rank):
            for j in range(self.rank):
                if self.symmetrizer[i] * self.cartan[i][j] != self.symmetrizer[j] * self.cartan[j][i]:
                    raise ConfigurationError("symmetrizer does not symmetrize the Cartan matrix")
        self._check_positive_definite()
        self.cartan_inverse = _invert(self.cartan) if self.rank else ()
        self.positive_roots = self._close_roots()
        if self.rank:
            self.highest_root = max(self.positive_roots, key=lambda c: sum(c))
            tops = [c for c in self.positive_roots if sum(c) == sum(self.highest_root)]
            if len(tops) != 1:
                raise ConfigurationError("Cartan matrix is not of irreducible finite type")
            # Rescale the symmetrizer so the highest root has squared length 2;
            # the affine formulas below assume this normalization.
            norm2 = self._root_norm2(self.highest_root)
            self.symmetrizer = tuple(d * 2 / norm2 for d in self.symmetrizer)
            self.marks = tuple(int(c) for c in self.highest_root)
            comarks = tuple(a * d for a, d in zip(self.marks, self.symmetrizer))
            if any(c.denominator != 1 or c <= 0 for c in comarks):
                raise ConfigurationError("comarks are not positive integers")
            self.comarks = tuple(int(c) for c in comarks)
        else:
            self.highest_root = ()
            self.marks = ()
            self.comarks = ()
        self.dual_coxeter = 1 + sum(self.comarks)
        # Dynkin labels of the highest root, exact integers.
        self.theta_labels = tuple(
            sum(self.cartan[i][j] * self.marks[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def _validate_cartan(self):
        a = self.cartan
        for i in range(self.rank):
            if len(a[i]) != self.rank:
                raise ConfigurationError("Cartan matrix must be square")
            if a[i][i] != 2:
                raise ConfigurationError("Cartan diagonal entries must equal 2")
            for j in range(self.rank):
                if i != j:
                    if a[i][j] > 0:
                        raise ConfigurationError("off-diagonal Cartan entries must be <= 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise ConfigurationError("Cartan zero pattern must be symmetric")

    def _derive_symmetrizer(self):
        # Propagate d_i A_ij = d_j A_ji along the Dynkin graph.
        d = [None] * self.rank
        for start in range(self.rank):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(self.rank):
                    if i == j or self.cartan[i][j] == 0:
                        continue
                    val = d[i] * self.cartan[i][j] / self.cartan[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise ConfigurationError("Cartan matrix is not symmetrizable")
        return d

    def _check_positive_definite(self):
        # Leading principal minors of the symmetrized matrix, exactly.
        sym = [
            [self.symmetrizer[i] * self.cartan[i][j] for j in range(self.rank)]
            for i in range(self.rank)
        ]
        for k in range(1, self.rank + 1):
            if _det([row[:k] for row in sym[:k]]) <= 0:
                raise ConfigurationError("symmetrized Cartan matrix is not positive definite")

    def _close_roots(self) -> tuple[tuple[int, ...], ...]:
        """All positive roots in simple-root coordinates, via reflection closure."""
        rank = self.rank
        if rank == 0:
            return ()
        seen: set[tuple[int, ...]] = set()
        frontier = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        seen.update(frontier)
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(rank):
                    pairing = sum(self.cartan[i][j] * c[j] for j in range(rank))
                    image = tuple(
                        c[j] - (pairing if j == i else 0) for j in range(rank)
                    )
                    if image not in seen:
                        seen.add(image)
                        nxt.append(image)
            if len(seen) > _ROOT_CLOSURE_LIMIT:
                raise ConfigurationError("root system is not finite")
            frontier = nxt
        pos = [c for c in seen if all(x >= 0 for x in c)]
        pos.sort(key=lambda c: (sum(c), c))
        return tuple(pos)

    def _root_norm2(self, coords) -> Fraction:
        return sum(
            Fraction(coords[i]) * coords[j] * self.symmetrizer[i] * self.cartan[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    # -- affine labels ---------------------------------------------------

    def check_rank(self, w: AffineWeight):
        if len(w.labels) != self.rank:
            raise ConfigurationError(
                f"weight has {len(w.labels)} labels but algebra {self.label} has rank {self.rank}"
            )

    def label0(self, w: AffineWeight) -> Fraction:
        self.check_rank(w)
        return w.level - sum(c * x for c, x in zip(self.comarks, w.labels))

    def affine_labels(self, w: AffineWeight) -> tuple[Fraction, ...]:
        """(lambda_0, lambda_1, ..., lambda_r)."""
        return (self.label0(w),) + w.labels

    def is_dominant(self, w: AffineWeight) -> bool:
        return all(x >= 0 for x in self.affine_labels(w))

    def weight(self, labels, level, grade=0) -> AffineWeight:
        w = AffineWeight(labels, level, grade)
        self.check_rank(w)
        return w

    def __repr__(self):
        return f"AlgebraSpec({self.label!r}, rank={self.rank})"


def weyl_vector(spec: AlgebraSpec) -> AffineWeight:
    """All Dynkin labels 1 (including the zeroth); level is the dual Coxeter number."""
    return AffineWeight((1,) * spec.rank, spec.dual_coxeter, 0)


def inner_product(spec: AlgebraSpec, a: AffineWeight, b: AffineWeight) -> Fraction:
    """Symmetric invariant form.

    On classical parts this is the positive-definite symmetrized form;
    the grade direction is isotropic and pairs with the level.
    """
    spec.check_rank(a)
    spec.check_rank(b)
    classical = classical_inner(spec, a.labels, b.labels)
    return classical + a.level * b.grade + b.level * a.grade


def classical_inner(spec: AlgebraSpec, la, lb) -> Fraction:
    y = _apply(spec.cartan_inverse, lb)
    return sum(l * d * c for l, d, c in zip(la, spec.symmetrizer, y))


def to_root_basis(spec: AlgebraSpec, w: AffineWeight) -> tuple[Fraction, ...]:
    """Classical part in simple-root coordinates (display basis)."""
    spec.check_rank(w)
    return _apply(spec.cartan_inverse, w.labels)


def from_root_basis(spec: AlgebraSpec, coords, level=0, grade=0) -> AffineWeight:
    """Inverse of to_root_basis; exact round-trip."""
    coords = _fracs(coords)
    if len(coords) != spec.rank:
        raise ConfigurationError("coordinate length does not match rank")
    labels = tuple(
        sum(Fraction(spec.cartan[i][j]) * coords[j] for j in range(spec.rank))
        for i in range(spec.rank)
    )
    return AffineWeight(labels, level, grade)


def root_weight(spec: AlgebraSpec, root: RootVector, level=0) -> AffineWeight:
    """The affine weight of a root-lattice vector (level 0 by default)."""
    labels = tuple(
        sum(spec.cartan[i][j] * root.coords[j] for j in range(spec.rank))
        for i in range(spec.rank)
    )
    return AffineWeight(labels, level, root.grade)


# -- exact linear algebra on small matrices ------------------------------


def _det(rows) -> Fraction:
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def _invert(rows) -> tuple[tuple[Fraction, ...], ...]:
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ConfigurationError("Cartan matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def _apply(matrix, vec) -> tuple[Fraction, ...]:
    return tuple(sum(row[j] * vec[j] for j in range(len(vec))) for row in matrix)


# -- presets and config files --------------------------------------------


def _a_series(rank: int):
    return [
        [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)]
        for i in range(rank)
    ]


_PRESETS = {
    "A1": lambda: AlgebraSpec("A1", _a_series(1), [1]),
    "A2": lambda: AlgebraSpec("A2", _a_series(2), [1, 1]),
    "A3": lambda: AlgebraSpec("A3", _a_series(3), [1, 1, 1]),
}

_preset_cache: dict[str, AlgebraSpec] = {}


def preset(name: str) -> AlgebraSpec:
    try:
        maker = _PRESETS[name]
    except KeyError:
        raise ConfigurationError(f"unknown algebra preset {name!r}") from None
    if name not in _preset_cache:
        _preset_cache[name] = maker()
    return _preset_cache[name]


def load_algebra(source: str) -> AlgebraSpec:
    """Resolve a preset name or a JSON config file path.

    Config schema: {"label": "A2", "cartan": [[2,-1],[-1,2]], "symmetrizer": [1,1]}
    (the symmetrizer may be omitted for symmetrizable matrices).
    """
    if source in _PRESETS:
        return preset(source)
    try:
        with open(source) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read algebra config {source!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"invalid JSON in {source!r}: {exc}") from exc
    if not isinstance(data, dict) or "cartan" not in data:
        raise ConfigurationError(f"algebra config {source!r} must define 'cartan'")
    try:
        return AlgebraSpec(
            data.get("label", source),
            data["cartan"],
            data.get("symmetrizer"),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad algebra config {source!r}: {exc}") from exc
