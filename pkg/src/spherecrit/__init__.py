"""Spectral toolkit for the conformally invariant critical equation.

Lifts (-Delta)^s u = |u|^(q-2) u, q = 2n/(n-2s), to the sphere via
stereographic projection, reduces to block-rotation-invariant profiles in
one variable, and computes sign-changing critical points of increasing
Dirichlet form, with independent oracles (closed forms, flat-side
quadrature, order-1 collocation) validating every step.
"""

from .backend import backend_name
from .feasibility import FeasibilityReport, check
from .harmonics import InvariantBasis, ProblemParams, build_basis, make_params
from .operators import SpectralProfile, eigenvalue, make_profile
from .solver import Solution, SolverConfig, iterate, newton_refine, solve, solve_sequence

__all__ = [
    "FeasibilityReport",
    "InvariantBasis",
    "ProblemParams",
    "Solution",
    "SolverConfig",
    "SpectralProfile",
    "backend_name",
    "build_basis",
    "check",
    "eigenvalue",
    "iterate",
    "make_params",
    "make_profile",
    "newton_refine",
    "solve",
    "solve_sequence",
]

__version__ = "0.1.0"
