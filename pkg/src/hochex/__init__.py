"""Exact Hochschild, cyclic and periodic cyclic homology of finite-dimensional algebras over Q."""

from .algebra import (
    Algebra,
    AlgebraMorphism,
    Bimodule,
    Extension,
    ModuleExtension,
    balanced_tensor,
    dual_bimodule,
    regular_bimodule,
    unitalization,
    validate_algebra,
    validate_bimodule,
    validate_extension,
    validate_morphism,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    HomologyReport,
    homology,
    induced_ranks,
    is_quasi_iso,
    les_check,
    mapping_cone,
)
from .cyclic import (
    MixedComplex,
    Unstabilized,
    cyclic_homology,
    cyclic_operators,
    periodic_cyclic,
    sbi_check,
)
from .errors import (
    BadPrime,
    HochexError,
    NotAConflation,
    NotCommutative,
    ParseError,
    SizeLimit,
    TruncationWarning,
    UnknownModel,
    ValidationError,
)
from .hochschild import (
    HUnitalityCertificate,
    bar_boundary,
    excision_suite,
    filtration_probe,
    h_unitality_check,
    hh_cochain,
    hh_complex,
    hh_complex_nonunital,
    hochschild_boundary,
)
from .kaehler import hkr_j, hkr_k, kaehler_forms
from .linalg import SparseMatrix, kernel_basis, matrix_rank, rank, rank_modular, solve
from .zoo import (
    corner_ideal_extension,
    direct_sum_extension,
    dual_numbers,
    jet_algebra,
    matrix_algebra,
    nilpotent_jet_extension,
    zoo_parse,
)

__version__ = "0.1.0"
