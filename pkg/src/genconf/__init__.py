"""Generic point configurations, determinant cross ratios and tame maps."""

from .arith import GaussianRational
from .config import (
    AFFINE,
    PROJECTIVE,
    Configuration,
    Permutation,
    ProjectiveTransform,
    act_permutation,
    act_transform,
    is_generic,
    minor,
    sample_generic,
)
from .dcr import Dcr, divides, divisor_candidates, enumerate_dcrs, evaluate, parse_dcr, permute
from .errors import GenconfError
from .normalize import compose, decompose, embed_P, gamma, is_reduced, normalize
from .simplicial import (
    DivisibilityComplex,
    Simplex,
    build_complex,
    classify,
    dimension,
    normal_simplex,
    orbits,
    simplices,
    stabilizer,
)
from .tame import TameMap, check_strict_equivariance, eval_map, find_rho, induced_map, random_tame_map, recover

__all__ = [
    "AFFINE", "PROJECTIVE", "GaussianRational", "Configuration", "Permutation", "ProjectiveTransform",
    "act_permutation", "act_transform", "is_generic", "minor", "sample_generic",
    "Dcr", "divides", "divisor_candidates", "enumerate_dcrs", "evaluate", "parse_dcr", "permute",
    "GenconfError", "compose", "decompose", "embed_P", "gamma", "is_reduced", "normalize",
    "DivisibilityComplex", "Simplex", "build_complex", "classify", "dimension", "normal_simplex",
    "orbits", "simplices", "stabilizer",
    "TameMap", "check_strict_equivariance", "eval_map", "find_rho", "induced_map", "random_tame_map", "recover",
]
