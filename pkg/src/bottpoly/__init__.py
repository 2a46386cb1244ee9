"""Twisted cubes, generalized string polytopes and smooth resolutions, in exact arithmetic."""

from .errors import DomainError, PreconditionError, ResourceError
from .polyhedra import HPolytope, Halfspace, VertexSet, count_lattice_points, lattice_points, vertices
from .resolve import ResolutionReport, construct_m, containment_check, resolve, verify_resolution
from .rootsys import RootDatum, cartan_matrix, is_reduced, weyl_dim
from .stringpoly import (count_delta_lattice_points, delta_equals_P, delta_lattice_points, in_delta,
                         m_of_lambda, psi_trace)
from .twistedcube import WordMult, a_forms, cartier_data, direct_P_oracle, satisfies_P, twisted_cube

__version__ = "0.1.0"

__all__ = [
    "DomainError", "PreconditionError", "ResourceError",
    "HPolytope", "Halfspace", "VertexSet", "count_lattice_points", "lattice_points", "vertices",
    "ResolutionReport", "construct_m", "containment_check", "resolve", "verify_resolution",
    "RootDatum", "cartan_matrix", "is_reduced", "weyl_dim",
    "count_delta_lattice_points", "delta_equals_P", "delta_lattice_points", "in_delta", "m_of_lambda",
    "psi_trace",
    "WordMult", "a_forms", "cartier_data", "direct_P_oracle", "satisfies_P", "twisted_cube",
]
