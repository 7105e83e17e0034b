"""Exact string functions, weight multiplicities and characters for
untwisted affine Lie algebras, computed by folding the recursion fan into
the dominant chamber, with an independent unfolded-recursion oracle."""

from .algebra import (
    AffineWeight,
    AlgebraSpec,
    RootVector,
    from_root_basis,
    inner_product,
    load_algebra,
    preset,
    to_root_basis,
    weyl_vector,
)
from .errors import (
    AffstrError,
    ConfigurationError,
    CongruenceError,
    ConsistencyError,
    ConventionError,
    NonterminationError,
    OutOfWindowError,
    ResourceLimitError,
)
from .fan import Fan, FanVector, build_fan, verify_denominator
from .folding import (
    BaseWeightSet,
    FoldedFan,
    build_folded_fan,
    build_folded_fans,
    fold_shift,
    lemma1_check,
)
from .oracle import (
    RacahOracle,
    euler_square_series,
    level1_eta_series,
    racah_multiplicity,
)
from .strings import (
    BlockSystem,
    CongruenceClassId,
    StringTable,
    assemble_system,
    character,
    enumerate_class_weights,
    solve_strings,
    string_table,
    weight_multiplicity,
)
from .weyl import (
    TranslationDatum,
    WeylOutcome,
    reflect,
    shifted_reflect,
    to_dominant,
    to_dominant_shifted,
    translation_datum,
)

__version__ = "0.1.0"
