"""Congruence classes, the block system, and exact string function solving.

The dominant level-k grade-0 weights split into congruence classes
(classical parts modulo the classical root lattice); fan shifts never
leave a class.  For one class the multiplicity recursion, written for
all strings simultaneously down to a cutoff grade u, becomes a square
block system with Toeplitz upper-triangular blocks built from the folded
fan multiplicities.  It is solved exactly grade by grade using the
grade-zero block; every solution component must come out a non-negative
integer, anything else signals an upstream bug and aborts.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AffineWeight, AlgebraSpec, _det, to_root_basis
from .errors import (
    ConfigurationError,
    ConsistencyError,
    OutOfWindowError,
)
from .folding import BaseWeightSet, FoldedFan, build_folded_fans
from .weyl import to_dominant

__all__ = [
    "CongruenceClassId",
    "CongruenceClassifier",
    "BlockSystem",
    "StringTable",
    "enumerate_class_weights",
    "assemble_system",
    "solve_strings",
    "string_table",
    "weight_multiplicity",
    "character",
]


@dataclass(frozen=True)
class CongruenceClassId:
    """Residues of the classical part in the weight/root lattice quotient."""

    residue: tuple[int, ...]

    def __repr__(self):
        return "class" + repr(tuple(self.residue))


class CongruenceClassifier:
    """Classifies Dynkin-label vectors modulo the classical root lattice.

    Works for any algebra via an integer diagonalization of the Cartan
    matrix; only residues with a nontrivial modulus are kept (a single
    residue mod 3 for A2).
    """

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        u, diag = _diagonalize(spec.cartan)
        self._u = u
        self._moduli = tuple(int(d) for d in diag)
        self._keep = tuple(i for i, d in enumerate(self._moduli) if d > 1)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self._moduli[i] for i in self._keep)

    def id_of(self, labels) -> CongruenceClassId:
        labels = tuple(labels)
        if len(labels) != self.spec.rank:
            raise ConfigurationError("label length does not match rank")
        if any(Fraction(x).denominator != 1 for x in labels):
            raise ConfigurationError("congruence classes need integral Dynkin labels")
        v = [
            sum(self._u[i][j] * int(labels[j]) for j in range(self.spec.rank))
            for i in range(self.spec.rank)
        ]
        return CongruenceClassId(tuple(v[i] % self._moduli[i] for i in self._keep))


_classifier_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def classifier_for(spec: AlgebraSpec) -> CongruenceClassifier:
    if spec not in _classifier_cache:
        _classifier_cache[spec] = CongruenceClassifier(spec)
    return _classifier_cache[spec]


def _diagonalize(cartan):
    """U and diag with U @ cartan @ V = diag for unimodular U, V.

    Residues of a vector v modulo the column lattice of the matrix are
    then (U v)_i mod diag_i.  The divisibility chain of the full Smith
    form is not needed for that.
    """
    n = len(cartan)
    m = [list(map(int, row)) for row in cartan]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(n):
        while True:
            entries = [
                (i, j) for i in range(k, n) for j in range(k, n) if m[i][j]
            ]
            if not entries:
                break
            pi, pj = min(entries, key=lambda ij: abs(m[ij[0]][ij[1]]))
            if pi != k:
                m[k], m[pi] = m[pi], m[k]
                u[k], u[pi] = u[pi], u[k]
            if pj != k:
                for row in m:
                    row[k], row[pj] = row[pj], row[k]
            for i in range(k + 1, n):
                q = m[i][k] // m[k][k]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[k])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[k])]
            for j in range(k + 1, n):
                q = m[k][j] // m[k][k]
                if q:
                    for row in m:
                        row[j] -= q * row[k]
            if all(m[i][k] == 0 for i in range(k + 1, n)) and all(
                m[k][j] == 0 for j in range(k + 1, n)
            ):
                break
        if m[k][k] < 0:
            m[k] = [-x for x in m[k]]
            u[k] = [-x for x in u[k]]
    return u, [m[i][i] for i in range(n)]


def enumerate_class_weights(spec: AlgebraSpec, level: int) -> dict:
    """All dominant level-k grade-0 weights, partitioned by congruence class.

    Within a class, weights are ordered by their simple-root coordinates,
    the order level-plane tables are conventionally listed in.
    """
    if level < 1:
        raise ConfigurationError("level must be >= 1")
    classify = classifier_for(spec)
    buckets: dict[CongruenceClassId, list[AffineWeight]] = {}
    for labels in _dominant_labels(spec.comarks, level):
        w = spec.weight(labels, level, 0)
        buckets.setdefault(classify.id_of(labels), []).append(w)
    out = {}
    for cid in sorted(buckets, key=lambda c: c.residue):
        weights = sorted(buckets[cid], key=lambda w: to_root_basis(spec, w))
        out[cid] = BaseWeightSet(spec, level, tuple(weights), cid)
    return out


def _dominant_labels(comarks, budget, prefix=()):
    if not comarks:
        yield prefix
        return
    head, rest = comarks[0], comarks[1:]
    for x in range(budget // head + 1):
        yield from _dominant_labels(rest, budget - head * x, prefix + (x,))


@dataclass
class BlockSystem:
    """The square system determining all strings of one congruence class.

    Block (j, s) is the upper-triangular Toeplitz matrix of the folded
    multiplicities eta_{j,s}; the right-hand side carries a single -1 in
    the block of the highest weight at the grade-0 row.
    """

    base: BaseWeightSet
    mu_index: int
    depth: int  # |u|
    folded: tuple[FoldedFan, ...]

    def eta(self, j: int, s: int, n: int) -> int:
        return self.folded[j].eta(s, n)

    def block(self, j: int, s: int):
        """Materialized (depth+1)-square Toeplitz block."""
        size = self.depth + 1
        return [
            [self.eta(j, s, c - r) if c >= r else 0 for c in range(size)]
            for r in range(size)
        ]

    def grade_matrix(self, n: int):
        p = len(self.base)
        return [[self.eta(j, s, n) for s in range(p)] for j in range(p)]

    def rhs(self):
        """Stacked right-hand side, one (depth+1)-vector per block row."""
        size = self.depth + 1
        out = [0] * (size * len(self.base))
        out[self.mu_index * size + size - 1] = -1
        return out


def assemble_system(base: BaseWeightSet, folded, mu_index: int, u: int) -> BlockSystem:
    """Collect folded fans into the block system for one highest weight."""
    if u > 0:
        raise ConfigurationError("cutoff grade u must be <= 0")
    depth = -int(u)
    folded = tuple(folded)
    if len(folded) != len(base):
        raise ConfigurationError("need one folded fan per base weight")
    for j, ff in enumerate(folded):
        if ff.base_index != j:
            raise ConfigurationError("folded fans must be ordered by base index")
        if ff.cutoff < depth:
            raise OutOfWindowError(
                f"folded fan {j} reaches offset {ff.cutoff} < requested depth {depth}"
            )
    if not 0 <= mu_index < len(base):
        raise ConfigurationError("mu_index out of range")
    return BlockSystem(base, mu_index, depth, folded)


@dataclass
class StringTable:
    """String function coefficients m_{s,n} for one module, n = 0..depth."""

    algebra: AlgebraSpec
    base: BaseWeightSet
    mu_index: int
    cutoff: int  # u <= 0
    coefficients: tuple[tuple[int, ...], ...]  # [string s][depth n]

    @property
    def level(self) -> int:
        return self.base.level

    @property
    def mu(self) -> AffineWeight:
        return self.base.weights[self.mu_index]

    @property
    def depth(self) -> int:
        return -self.cutoff

    def string(self, s: int) -> tuple[int, ...]:
        return self.coefficients[s]

    def to_json(self) -> dict:
        return {
            "mu": [int(x) for x in self.mu.labels],
            "level": int(self.level),
            "cutoff": int(self.cutoff),
            "strings": [
                {
                    "xi": [int(x) for x in w.labels],
                    "coeffs": list(self.coefficients[s]),
                }
                for s, w in enumerate(self.base.weights)
            ],
        }

    @classmethod
    def from_json(cls, spec: AlgebraSpec, data) -> "StringTable":
        level = data["level"]
        weights = tuple(spec.weight(tuple(s["xi"]), level, 0) for s in data["strings"])
        cid = classifier_for(spec).id_of(tuple(data["mu"]))
        base = BaseWeightSet(spec, level, weights, cid)
        return cls(
            spec,
            base,
            base.index_of(tuple(data["mu"])),
            data["cutoff"],
            tuple(tuple(s["coeffs"]) for s in data["strings"]),
        )


def solve_strings(system: BlockSystem) -> StringTable:
    """Exact forward substitution through the grades.

    At each depth d the grade-zero block is solved against the
    already-known shallower coefficients.  Integrality and
    non-negativity of every component are asserted.
    """
    p = len(system.base)
    depth = system.depth
    e0 = system.grade_matrix(0)
    columns: list[list[Fraction]] = []
    for d in range(depth + 1):
        rhs = [Fraction(0)] * p
        if d == 0:
            rhs[system.mu_index] = Fraction(-1)
        for n in range(1, d + 1):
            en = system.grade_matrix(n)
            prev = columns[d - n]
            for j in range(p):
                acc = rhs[j]
                for s in range(p):
                    if en[j][s]:
                        acc -= en[j][s] * prev[s]
                rhs[j] = acc
        columns.append(_solve_exact(e0, rhs))
    coeffs = []
    for s in range(p):
        row = []
        for d in range(depth + 1):
            value = columns[d][s]
            if value.denominator != 1:
                raise ConsistencyError(
                    f"non-integer string coefficient {value} at (string {s}, depth {d})"
                )
            if value < 0:
                raise ConsistencyError(
                    f"negative string coefficient {value} at (string {s}, depth {d})"
                )
            row.append(int(value))
        coeffs.append(tuple(row))
    table = StringTable(
        system.base.algebra,
        system.base,
        system.mu_index,
        -depth,
        tuple(coeffs),
    )
    if table.coefficients[system.mu_index][0] != 1:
        raise ConsistencyError("highest weight multiplicity is not 1")
    return table


def _solve_exact(matrix, rhs):
    """Gaussian elimination over the rationals; raises on singularity."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ConsistencyError(
                "grade-zero block is singular; the folded fan is inconsistent"
            )
        m[col], m[pivot] = m[pivot], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def grade_zero_determinant(system: BlockSystem) -> int:
    """Determinant of the grade-zero block; +-1 on every worked fixture."""
    value = _det(system.grade_matrix(0))
    if value.denominator != 1:
        raise ConsistencyError("grade-zero determinant is not an integer")
    return int(value)


def string_table(
    spec: AlgebraSpec, mu_labels, level: int, u: int, *, fan=None
) -> StringTable:
    """Full pipeline: class enumeration, folding, assembly, exact solve."""
    mu_labels = tuple(int(x) for x in mu_labels)
    if any(x < 0 for x in mu_labels):
        raise ConfigurationError("highest weight labels must be non-negative")
    label0 = level - sum(c * x for c, x in zip(spec.comarks, mu_labels))
    if label0 < 0:
        raise ConfigurationError(
            f"labels {mu_labels} exceed level {level} (zeroth label {label0})"
        )
    classes = enumerate_class_weights(spec, level)
    cid = classifier_for(spec).id_of(mu_labels)
    base = classes[cid]
    mu_index = base.index_of(mu_labels)
    folded, _ = build_folded_fans(spec, base, -int(u), fan=fan)
    system = assemble_system(base, folded, mu_index, u)
    return solve_strings(system)


def weight_multiplicity(spec: AlgebraSpec, table: StringTable, lam: AffineWeight) -> int:
    """Multiplicity of an arbitrary weight of the module, via its string."""
    spec.check_rank(lam)
    if lam.level != table.level:
        raise ConfigurationError(
            f"weight level {lam.level} does not match module level {table.level}"
        )
    dominant = to_dominant(spec, lam).dominant
    if dominant.grade > 0:
        return 0
    if dominant.grade < table.cutoff:
        raise OutOfWindowError(
            f"grade {dominant.grade} is beyond the computed cutoff {table.cutoff}"
        )
    if any(x.denominator != 1 for x in dominant.labels):
        return 0
    cid = classifier_for(spec).id_of(dominant.labels)
    if cid != table.base.class_id:
        return 0
    s = table.base.index_of(dominant.labels)
    return table.coefficients[s][-int(dominant.grade)]


def character(spec: AlgebraSpec, table: StringTable, window) -> list:
    """All (weight, multiplicity) pairs with grades inside the window.

    `window` is either a single depth d >= 0 (grades 0..-d) or a pair of
    grades.  Weights are found by walking the ordinary orbits of the
    dominant string points down to the window floor; each weight reduces
    to exactly one string point, so nothing is double counted.
    """
    top, bottom = _normalize_window(window)
    if bottom < table.cutoff:
        raise OutOfWindowError(
            f"window floor {bottom} is beyond the computed cutoff {table.cutoff}"
        )
    found: dict[AffineWeight, int] = {}
    for s, xi in enumerate(table.base.weights):
        for d in range(table.depth + 1):
            mult = table.coefficients[s][d]
            if mult == 0 or -d < bottom:
                continue
            start = xi.shift_grade(-d)
            for w in _orbit_down_to(spec, start, bottom):
                if bottom <= w.grade <= top:
                    found[w] = mult
    return sorted(found.items(), key=lambda kv: (-kv[0].grade, kv[0].labels))


def _normalize_window(window):
    if isinstance(window, int):
        if window < 0:
            raise ConfigurationError("window depth must be >= 0")
        return 0, -window
    top, bottom = window
    if top < bottom:
        top, bottom = bottom, top
    if top > 0:
        raise ConfigurationError("window grades must be <= 0")
    return int(top), int(bottom)


def _orbit_down_to(spec: AlgebraSpec, start: AffineWeight, floor: int):
    """Ordinary orbit elements with grade >= floor, by descending walk."""
    if start.grade < floor:
        return
    seen = {(start.labels, start.grade)}
    stack = [start]
    while stack:
        node = stack.pop()
        yield node
        labels = spec.affine_labels(node)
        for i, li in enumerate(labels):
            if li <= 0:
                continue
            child = _reflect(spec, i, node, labels)
            if child.grade < floor:
                continue
            key = (child.labels, child.grade)
            if key not in seen:
                seen.add(key)
                stack.append(child)


def _reflect(spec, i, w, labels):
    if i == 0:
        l0 = labels[0]
        new = tuple(x + l0 * t for x, t in zip(w.labels, spec.theta_labels))
        return AffineWeight(new, w.level, w.grade - l0)
    li = labels[i]
    new = tuple(x - li * spec.cartan[j][i - 1] for j, x in enumerate(w.labels))
    return AffineWeight(new, w.level, w.grade)
