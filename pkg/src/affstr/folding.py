"""Folding the fan into the dominant chamber relative to a base weight.

For a dominant level-k base weight xi, every fan vector gamma is shifted
onto xi and the sum is reduced back to the dominant chamber by the
ordinary Weyl action.  The reduction target has the same level, lives in
the same congruence class, and sits at a grade offset n >= 0; the fan
multiplicities accumulate there.  The zero shift is seeded with
multiplicity -1, which turns the multiplicity recursion into a solvable
triangular system (see strings.py).

Folded offsets never drop below the grade of the fan vector (reduction
only adds non-negative multiples of simple roots), so a fan built to the
requested cutoff already contains every contributor; the builder still
grows the fan adaptively until two extra layers contribute nothing, as a
guard against convention bugs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AffineWeight, AlgebraSpec, RootVector, root_weight
from .errors import CongruenceError, ConfigurationError, ConventionError
from .fan import Fan, FanVector, build_fan
from .weyl import to_dominant

__all__ = [
    "BaseWeightSet",
    "FoldedFan",
    "fold_shift",
    "build_folded_fan",
    "build_folded_fans",
    "lemma1_check",
]


@dataclass(frozen=True)
class BaseWeightSet:
    """Ordered dominant level-k grade-0 weights of one congruence class."""

    algebra: AlgebraSpec
    level: int
    weights: tuple[AffineWeight, ...]
    class_id: object = None

    def __post_init__(self):
        if not self.weights:
            raise ConfigurationError("base weight set is empty")
        seen = set()
        for w in self.weights:
            if w.level != self.level or w.grade != 0:
                raise ConfigurationError("base weights must sit at grade 0 of the level plane")
            if not self.algebra.is_dominant(w):
                raise ConfigurationError(f"base weight {w} is not dominant")
            if w.labels in seen:
                raise ConfigurationError("base weights must be distinct")
            seen.add(w.labels)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def index_of(self, labels) -> int:
        target = tuple(labels)
        for i, w in enumerate(self.weights):
            if tuple(w.labels) == tuple(target):
                return i
        raise CongruenceError(f"labels {target} not in base weight set")


@dataclass
class FoldedFan:
    """Shift multiplicities eta for one base weight.

    `entries` maps (target index, grade offset) to the accumulated
    multiplicity; the seeded zero shift contributes -1 at
    (base_index, 0).  Absent entries are zero.
    """

    base_index: int
    cutoff: int
    entries: dict = field(default_factory=dict)

    def eta(self, target: int, grade: int) -> int:
        return self.entries.get((target, grade), 0)

    def eta_row(self, target: int, upto: int | None = None) -> list[int]:
        n = self.cutoff if upto is None else upto
        return [self.eta(target, d) for d in range(n + 1)]

    def to_json(self) -> dict:
        items = sorted(self.entries.items())
        return {
            "base": self.base_index,
            "cutoff": self.cutoff,
            "entries": [
                {"target": s, "grade": n, "eta": v} for (s, n), v in items
            ],
        }

    @classmethod
    def from_json(cls, data) -> "FoldedFan":
        entries = {
            (e["target"], e["grade"]): e["eta"] for e in data["entries"]
        }
        return cls(data["base"], data["cutoff"], entries)


def fold_shift(spec: AlgebraSpec, xi: AffineWeight, gamma: FanVector):
    """Shift xi by one fan vector and fold back to the dominant chamber.

    Returns the dominant target (grade included) and the contribution
    s(gamma).  Walls are kept: ordinary weight multiplicities are
    Weyl-invariant, so wall targets accumulate like any other.
    """
    shifted = xi + root_weight(spec, RootVector(gamma.root, gamma.grade))
    target = to_dominant(spec, shifted).dominant
    if target.grade < xi.grade:
        raise ConventionError(
            f"folded offset {target.grade - xi.grade} is negative for shift {gamma}"
        )
    return target, gamma.mult


def build_folded_fan(
    spec: AlgebraSpec,
    base: BaseWeightSet,
    base_index: int,
    fan: Fan,
    cutoff: int,
) -> FoldedFan:
    """Fold every fan vector onto base.weights[base_index].

    The fan must reach at least the requested cutoff; offsets beyond the
    cutoff are discarded.  Every kept target must lie in `base`.
    """
    if fan.cutoff < cutoff:
        raise ConfigurationError(
            f"fan cutoff {fan.cutoff} is below the folded cutoff {cutoff}"
        )
    xi = base.weights[base_index]
    folded = FoldedFan(base_index, cutoff, {(base_index, 0): -1})
    for gamma in fan:
        target, contribution = fold_shift(spec, xi, gamma)
        offset = target.grade - xi.grade
        if offset > cutoff:
            continue
        try:
            s = base.index_of(target.labels)
        except CongruenceError:
            raise CongruenceError(
                f"folded target {target} of base {xi} is outside its congruence class"
            ) from None
        key = (s, int(offset))
        value = folded.entries.get(key, 0) + contribution
        if value:
            folded.entries[key] = value
        else:
            folded.entries.pop(key, None)
    return folded


def build_folded_fans(
    spec: AlgebraSpec, base: BaseWeightSet, cutoff: int, *, fan: Fan | None = None
):
    """Folded fans for every base weight, growing the fan until stable.

    Grows the fan cutoff until one whole extra layer folds to nothing
    within the window, then one more layer as a guard.  Returns the list
    of folded fans and the fan actually used.
    """
    margin = 2
    while True:
        if fan is None or fan.cutoff < cutoff + margin:
            fan = build_fan(spec, cutoff + margin)
        folded = [
            build_folded_fan(spec, base, j, fan, cutoff) for j in range(len(base))
        ]
        if _top_layers_silent(spec, base, fan, cutoff, layers=2):
            return folded, fan
        margin += 2


def _top_layers_silent(spec, base, fan, cutoff, layers):
    for grade in range(fan.cutoff - layers + 1, fan.cutoff + 1):
        for gamma in fan.layer(grade):
            for xi in base:
                target, _ = fold_shift(spec, xi, gamma)
                if target.grade - xi.grade <= cutoff:
                    return False
    return True


def lemma1_check(
    spec: AlgebraSpec,
    base: BaseWeightSet,
    base_index: int,
    gamma: FanVector,
    probe_grades,
) -> bool:
    """Folded triples must not depend on the grade of the probing string point."""
    xi0 = base.weights[base_index]
    triples = set()
    for n in probe_grades:
        if n > 0:
            raise ConfigurationError("probe grades must be <= 0")
        xi = xi0.shift_grade(n)
        target, contribution = fold_shift(spec, xi, gamma)
        triples.add((target.labels, target.grade - xi.grade, contribution))
    return len(triples) <= 1
