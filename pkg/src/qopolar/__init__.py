"""Polar invariants of quasi-ordinary hypersurfaces, computed exactly.

The main entry points are the Eggers-Wall tree (:mod:`qopolar.eggers`), the
bunch type of the polar and its discriminant polyhedra
(:mod:`qopolar.bunches`), the resultant oracle (:mod:`qopolar.resultants`)
and the combinatorics of the toric resolution (:mod:`qopolar.resolution`).
"""

from .btype import BunchType, shift_type
from .bunches import (bunch_type_fY, group_bunches, peel_contact, predicted_psi_i,
                      predicted_psi_total, reconstruct_tree)
from .eggers import BranchData, EggersWallTree, build_tree, isomorphic, nu, validate
from .errors import QOPolarError
from .geometry import GeneralPolyhedron, PolygonalProfile, is_polygonal, minkowski_sum_general
from .poly import SparsePoly
from .qvec import INF, parse_qvec, qvec
from .resolution import dead_arc_and_rupture, lmw_verify, resolve
from .resultants import (discriminant_y, is_quasi_ordinary, newton_polyhedron, psi_image,
                         resultant_y, rho)
from .textio import parse_polynomial, parse_tree, parse_type

__version__ = "0.1.0"

__all__ = [
    "BranchData", "BunchType", "EggersWallTree", "GeneralPolyhedron", "INF",
    "PolygonalProfile", "QOPolarError", "SparsePoly", "build_tree", "bunch_type_fY",
    "dead_arc_and_rupture", "discriminant_y", "group_bunches", "is_polygonal",
    "is_quasi_ordinary", "isomorphic", "lmw_verify", "minkowski_sum_general",
    "newton_polyhedron", "nu", "parse_polynomial", "parse_qvec", "parse_tree", "parse_type",
    "peel_contact", "predicted_psi_i", "predicted_psi_total", "psi_image", "qvec",
    "reconstruct_tree", "resolve", "resultant_y", "rho", "shift_type", "validate",
]
