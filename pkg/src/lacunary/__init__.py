"""Perfect-power detection and r-th roots of sparse (lacunary) polynomials."""

from .detect import (DEFAULT_EPSILON, DetectionReport, is_perfect_power, is_perfect_power_gf,
                     is_perfect_power_z, is_perfect_rth_power_gf, is_perfect_rth_power_z)
from .errors import (CharacteristicError, LacunaryError, MonomialInputError, NotAPower,
                     PolyFileError, SparsityCeilingExceeded)
from .fields import ZZ, ExtensionField, PrimeField
from .multivar import MultiSparsePoly, detect_multivariate, kronecker_root
from .newton import RootResult, compute_root_newton, verify_power
from .poly import SparsePoly, norms

__all__ = [
    "DEFAULT_EPSILON", "DetectionReport", "is_perfect_power", "is_perfect_power_gf",
    "is_perfect_power_z", "is_perfect_rth_power_gf", "is_perfect_rth_power_z",
    "CharacteristicError", "LacunaryError", "MonomialInputError", "NotAPower",
    "PolyFileError", "SparsityCeilingExceeded", "ZZ", "ExtensionField", "PrimeField",
    "MultiSparsePoly", "detect_multivariate", "kronecker_root", "RootResult",
    "compute_root_newton", "verify_power", "SparsePoly", "norms",
]
