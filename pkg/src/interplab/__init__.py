"""interplab: numerical laboratory for complex interpolation of
finite-dimensional Banach couples."""

__version__ = "0.1.0"

from .interpolation import Couple, calderon_norm, f2_minimal, gagliardo_norm, k_functional, norm_path, omega
from .norms import MaxOf, NormSpec, Quadratic, Scaled, WeightedLp, dual_norm_eval, norm_eval, norming_functional
from .oracles import LpCoupleSpec, brute_force_k_functional, lp_interpolation_norm, lp_minimal_function
from .strip import AnalyticFn, BoundaryGrid, conformal_map, make_grid, poisson_density

__all__ = [
    "AnalyticFn",
    "BoundaryGrid",
    "Couple",
    "LpCoupleSpec",
    "MaxOf",
    "NormSpec",
    "Quadratic",
    "Scaled",
    "WeightedLp",
    "brute_force_k_functional",
    "calderon_norm",
    "conformal_map",
    "dual_norm_eval",
    "f2_minimal",
    "gagliardo_norm",
    "k_functional",
    "lp_interpolation_norm",
    "lp_minimal_function",
    "make_grid",
    "norm_eval",
    "norm_path",
    "norming_functional",
    "omega",
    "poisson_density",
]
