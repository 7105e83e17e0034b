"""Affine Weyl group actions and reduction to the dominant chamber.

Simple reflections act on (labels; level; grade):

    s_i (i >= 1):  subtract label_i times the i-th simple root, grade fixed;
    s_0:           add label_0 times the highest root and lower the grade
                   by label_0.

Reduction applies the reflection at the most negative affine label until
all labels are non-negative.  Any strategy yields the same dominant
representative; this one gives deterministic words.  Termination requires
positive level, guarded by a step budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AffineWeight, AlgebraSpec, classical_inner, to_root_basis, weyl_vector
from .errors import ConfigurationError, NonterminationError

__all__ = [
    "WeylOutcome",
    "TranslationDatum",
    "reflect",
    "shifted_reflect",
    "to_dominant",
    "to_dominant_shifted",
    "translation_datum",
    "apply_word",
    "translate",
]

DEFAULT_STEP_LIMIT = 1_000_000


@dataclass(frozen=True)
class WeylOutcome:
    """Result of a dominant-chamber reduction.

    `sign` is the determinant of the reducing element for the specific
    word used; on a wall it is not canonical and consumers must not rely
    on it.  `on_wall` is true iff the orbit meets a chamber wall, i.e.
    some affine label of the dominant representative vanishes.
    """

    dominant: AffineWeight
    sign: int
    on_wall: bool
    word: tuple[int, ...]


@dataclass(frozen=True)
class TranslationDatum:
    """Coroot-lattice argument of the translation part of a reducing element."""

    theta: tuple[int, ...]


def reflect(spec: AlgebraSpec, i: int, w: AffineWeight) -> AffineWeight:
    """Simple reflection s_i, ordinary action.  Involution; level preserved."""
    if not 0 <= i <= spec.rank:
        raise ConfigurationError(f"reflection index {i} out of range 0..{spec.rank}")
    if i == 0:
        l0 = spec.label0(w)
        labels = tuple(x + l0 * t for x, t in zip(w.labels, spec.theta_labels))
        return AffineWeight(labels, w.level, w.grade - l0)
    li = w.labels[i - 1]
    labels = tuple(
        x - li * spec.cartan[j][i - 1] for j, x in enumerate(w.labels)
    )
    return AffineWeight(labels, w.level, w.grade)


def shifted_reflect(spec: AlgebraSpec, i: int, w: AffineWeight) -> AffineWeight:
    """The rho-shifted (dot) action of s_i."""
    rho = weyl_vector(spec)
    return reflect(spec, i, w + rho) - rho


def to_dominant(
    spec: AlgebraSpec, w: AffineWeight, *, max_steps: int = DEFAULT_STEP_LIMIT
) -> WeylOutcome:
    """Reduce a positive-level weight to its dominant orbit representative."""
    spec.check_rank(w)
    if w.level <= 0:
        raise NonterminationError(
            f"to_dominant needs positive level, got {w.level}"
        )
    word: list[int] = []
    current = w
    for _ in range(max_steps):
        labels = spec.affine_labels(current)
        worst = min(range(len(labels)), key=lambda i: (labels[i], i))
        if labels[worst] >= 0:
            on_wall = any(x == 0 for x in labels)
            return WeylOutcome(current, -1 if len(word) % 2 else 1, on_wall, tuple(word))
        current = reflect(spec, worst, current)
        word.append(worst)
    raise NonterminationError(f"reduction exceeded {max_steps} steps")


def to_dominant_shifted(
    spec: AlgebraSpec, w: AffineWeight, *, max_steps: int = DEFAULT_STEP_LIMIT
) -> WeylOutcome:
    """Reduce under the shifted action w -> s.(w).

    `on_wall` means the shifted orbit is singular: signed sums over it
    cancel and the weight contributes nothing.
    """
    rho = weyl_vector(spec)
    out = to_dominant(spec, w + rho, max_steps=max_steps)
    return WeylOutcome(out.dominant - rho, out.sign, out.on_wall, out.word)


def apply_word(spec: AlgebraSpec, word, w: AffineWeight) -> AffineWeight:
    """Apply reflections in the order they were recorded."""
    for i in word:
        w = reflect(spec, i, w)
    return w


def translate(spec: AlgebraSpec, coroot_coords, w: AffineWeight) -> AffineWeight:
    """Action of the translation t_beta, beta given in simple-coroot coordinates."""
    if len(coroot_coords) != spec.rank:
        raise ConfigurationError("coroot coordinate length does not match rank")
    # beta as a classical weight: root coordinates b_i / d_i.
    root_coords = tuple(Fraction(b) / d for b, d in zip(coroot_coords, spec.symmetrizer))
    beta_labels = tuple(
        sum(Fraction(spec.cartan[i][j]) * root_coords[j] for j in range(spec.rank))
        for i in range(spec.rank)
    )
    beta = AffineWeight(beta_labels, 0, 0)
    pairing = classical_inner(spec, w.labels, beta.labels)
    norm2 = classical_inner(spec, beta.labels, beta.labels)
    labels = tuple(x + w.level * b for x, b in zip(w.labels, beta.labels))
    return AffineWeight(labels, w.level, w.grade - pairing - w.level * norm2 / 2)


def translation_datum(spec: AlgebraSpec, outcome: WeylOutcome) -> TranslationDatum:
    """Extract theta-vee from the t . s decomposition of the reducing word.

    The word acts on the level-1 zero weight as pure translation data:
    w(0;1;0) has classical part nu(beta), from which the coroot
    coordinates are read off exactly.
    """
    probe = AffineWeight((0,) * spec.rank, 1, 0)
    image = apply_word(spec, outcome.word, probe)
    root_coords = to_root_basis(spec, image)
    theta = []
    for y, d in zip(root_coords, spec.symmetrizer):
        b = y * d
        if b.denominator != 1:
            raise ConfigurationError("translation argument left the coroot lattice")
        theta.append(int(b))
    return TranslationDatum(tuple(theta))
