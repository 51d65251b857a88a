"""Lifted energy functional, its residual, Nehari scaling and nodal counts.

The energy is  E(w) = 1/2 int w A_s w dxi - 1/q int |w|^q dxi; its critical
points solve  A_s w = |w|^(q-2) w  on the sphere.  The nonlinear term is
evaluated pointwise on the quadrature grid and projected back, so every
quantity here is consistent with one and the same discretization.
"""

import numpy as np

from .errors import ParameterError
from .harmonics import InvariantBasis, analyze, synthesize
from .operators import SpectralProfile, degree_multipliers, dirichlet_form

__all__ = [
    "lq_norm_sphere",
    "nonlinear_projection",
    "energy",
    "residual",
    "nehari_scale",
    "nodal_count",
]


def lq_norm_sphere(basis: InvariantBasis, w: SpectralProfile, p: float) -> float:
    """Sphere-side L^p norm ( C sum_i w_i |w(t_i)|^p )^(1/p)."""
    if p < 1.0:
        raise ParameterError(f"norm exponent must be >= 1, got {p}")
    v = synthesize(basis, w.coefficients)
    return float(np.sum(basis.wq * np.abs(v) ** p) ** (1.0 / p))


def nonlinear_projection(basis: InvariantBasis, w: SpectralProfile) -> np.ndarray:
    """Coefficients of |w|^(q-2) w, nodewise evaluation + quadrature analysis."""
    q = w.params.q
    v = synthesize(basis, w.coefficients)
    return analyze(basis, np.abs(v) ** (q - 2.0) * v)


def energy(params, basis: InvariantBasis, w: SpectralProfile) -> float:
    """1/2 (Dirichlet form) - 1/q (L^q mass)."""
    v = synthesize(basis, w.coefficients)
    qmass = float(np.sum(basis.wq * np.abs(v) ** params.q))
    return 0.5 * dirichlet_form(params, w) - qmass / params.q


def residual(params, basis: InvariantBasis, w: SpectralProfile) -> SpectralProfile:
    """Coefficients of A_s w - |w|^(q-2) w.  Always a full-sector profile:
    for a parity-sector w the opposite-parity components must vanish (up to
    quadrature roundoff), which callers may assert."""
    lam = degree_multipliers(params, w.max_index)
    coeffs = lam * w.coefficients - nonlinear_projection(basis, w)
    return SpectralProfile(params=params, sector="full", coefficients=coeffs)


def nehari_scale(params, basis: InvariantBasis, w: SpectralProfile) -> float:
    """Scaling t* putting w on the Nehari set: <A_s tw, tw> = ||tw||_q^q."""
    dirichlet = dirichlet_form(params, w)
    if dirichlet == 0.0:
        raise ParameterError("nehari_scale is undefined for the zero profile")
    v = synthesize(basis, w.coefficients)
    qmass = float(np.sum(basis.wq * np.abs(v) ** params.q))
    return float((dirichlet / qmass) ** (1.0 / (params.q - 2.0)))


def nodal_count(basis: InvariantBasis, w: SpectralProfile) -> int:
    """Sign changes of the profile across the ordered quadrature nodes.

    Values below 1e-12 of the profile's sup are treated as zero so roundoff
    oscillation is not counted.
    """
    v = synthesize(basis, w.coefficients)
    top = np.max(np.abs(v))
    if top == 0.0:
        return 0
    signs = np.sign(v[np.abs(v) >= 1e-12 * top])
    return int(np.count_nonzero(np.diff(signs)))
