"""The intertwining operator of order s as a diagonal spectral multiplier.

On degree-l spherical harmonics the operator acts by
lambda_l = Gamma(n/2 + l + s) / Gamma(n/2 + l - s); invariant basis index j
carries degree 2j.  Profiles live in coefficient space with an optional
parity sector (meaningful when the two symmetry blocks have equal size).
"""

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .harmonics import ProblemParams
from .specialfns import gamma_ratio

__all__ = [
    "SECTORS",
    "SpectralProfile",
    "make_profile",
    "sector_mask",
    "eigenvalue",
    "degree_multipliers",
    "apply_operator",
    "apply_inverse",
    "dirichlet_form",
    "dual_norm",
]

SECTORS = ("full", "odd", "even")


@dataclass
class SpectralProfile:
    """Invariant function on S^n as coefficients in the orthonormal basis."""

    params: ProblemParams
    sector: str
    coefficients: np.ndarray = field(repr=False)

    @property
    def max_index(self) -> int:
        return self.coefficients.size - 1


def sector_mask(size: int, sector: str) -> np.ndarray:
    """Boolean mask of admissible basis indices for a parity sector."""
    if sector not in SECTORS:
        raise ParameterError(f"unknown sector {sector!r}; expected one of {SECTORS}")
    j = np.arange(size)
    if sector == "odd":
        return j % 2 == 1
    if sector == "even":
        return j % 2 == 0
    return np.ones(size, dtype=bool)


def make_profile(params: ProblemParams, coefficients, sector: str = "full") -> SpectralProfile:
    """Build a profile, enforcing finiteness and the sector parity constraint."""
    c = np.asarray(coefficients, dtype=float).copy()
    if c.ndim != 1:
        raise ParameterError("coefficients must be a 1-D sequence")
    if not np.all(np.isfinite(c)):
        raise ParameterError("coefficients must be finite")
    mask = sector_mask(c.size, sector)
    if np.any(c[~mask] != 0.0):
        raise ParameterError(f"nonzero coefficients outside the {sector!r} sector")
    return SpectralProfile(params=params, sector=sector, coefficients=c)


def eigenvalue(params: ProblemParams, l: int) -> float:
    """lambda_l = Gamma(n/2 + l + s) / Gamma(n/2 + l - s) (> 0 for s < n/2)."""
    if l < 0:
        raise ParameterError(f"degree must be >= 0, got {l}")
    return gamma_ratio(params.n / 2.0 + l, params.s)


@lru_cache(maxsize=None)
def _degree_multipliers_cached(n: int, s: float, max_index: int) -> np.ndarray:
    lam = np.array([gamma_ratio(n / 2.0 + 2 * j, s) for j in range(max_index + 1)])
    lam.setflags(write=False)
    return lam


def degree_multipliers(params: ProblemParams, max_index: int) -> np.ndarray:
    """Cached eigenvalues lambda_{2j} for j = 0..max_index (read-only array)."""
    return _degree_multipliers_cached(params.n, params.s, max_index)


def apply_operator(params: ProblemParams, w: SpectralProfile) -> SpectralProfile:
    """Coefficientwise multiplication by lambda_{2j}."""
    lam = degree_multipliers(params, w.max_index)
    return replace(w, coefficients=lam * w.coefficients)


def apply_inverse(params: ProblemParams, w: SpectralProfile) -> SpectralProfile:
    """Coefficientwise division by lambda_{2j} (the operator is positive)."""
    lam = degree_multipliers(params, w.max_index)
    return replace(w, coefficients=w.coefficients / lam)


def dirichlet_form(params: ProblemParams, w: SpectralProfile) -> float:
    """Quadratic form sum_j lambda_{2j} c_j^2 = int w A_s w dxi."""
    lam = degree_multipliers(params, w.max_index)
    c = w.coefficients
    return float(np.sum(lam * c * c))


def dual_norm(params: ProblemParams, r: SpectralProfile) -> float:
    """Residual metric sqrt(sum_j r_j^2 / lambda_{2j})."""
    lam = degree_multipliers(params, r.max_index)
    c = r.coefficients
    return float(np.sqrt(np.sum(c * c / lam)))
