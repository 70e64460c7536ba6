"""Exact lattice-point, volume and decomposition computations for the staircase permutation polytopes P_n."""
from .exactcore import UniPoly, det_exact, lattice_index, poly_interpolate
from .ehrhart import catalan_product, ehrhart_poly, relative_volume
from .transfer import GuardExceeded, build_transfer_matrix, evaluate_e

__all__ = ["UniPoly", "det_exact", "lattice_index", "poly_interpolate", "catalan_product",
           "ehrhart_poly", "relative_volume", "GuardExceeded", "build_transfer_matrix",
           "evaluate_e"]
__version__ = "0.1.0"
