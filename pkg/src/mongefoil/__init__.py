"""Extremal disks, Robin functions and the extremal function of real convex bodies."""

from .errors import (ConvergenceError, DegenerateBodyError, InvalidArgumentError,
                     LpStatusError, MongefoilError, OutsideParameterDiskError,
                     UnsupportedRepresentationError)
from .estimators import ExtremalFunction, RobinFunction
from .extremal import (CenterSet, Direction, ExtremalDisk, PointAtInfinity, canonicalize,
                       center_set, ellipse_area, leaf_eval, solve_extremal)
from .geometry import (Ball, HPolytope, SupportBody, VPolytope, affine_image, contains,
                       detect_parallel_faces, hull_and_halfspaces_2d, support, symmetrize)
from .lp import LinearProgram, solve_lp
from .robin import indicatrix_contains, robin_exp_map, robin_function, robin_value
from .vk import (leaf_disjointness_check, ma_residual, vk_ball, vk_eval, vk_interval,
                 vk_product, vk_pullback)

__version__ = "0.1.0"

__all__ = [
    "Ball", "CenterSet", "ConvergenceError", "DegenerateBodyError", "Direction",
    "ExtremalDisk", "ExtremalFunction", "HPolytope", "InvalidArgumentError",
    "LinearProgram", "LpStatusError", "MongefoilError", "OutsideParameterDiskError",
    "PointAtInfinity", "RobinFunction", "SupportBody", "UnsupportedRepresentationError",
    "VPolytope", "affine_image", "canonicalize", "center_set", "contains",
    "detect_parallel_faces", "ellipse_area", "hull_and_halfspaces_2d",
    "indicatrix_contains", "leaf_disjointness_check", "leaf_eval", "ma_residual",
    "robin_exp_map", "robin_function", "robin_value", "solve_extremal", "solve_lp",
    "support", "symmetrize", "vk_ball", "vk_eval", "vk_interval", "vk_product",
    "vk_pullback",
]
