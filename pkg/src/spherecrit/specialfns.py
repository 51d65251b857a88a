"""Gamma-function machinery, Jacobi polynomials and Gauss-Jacobi quadrature.

Everything downstream (basis construction, operator eigenvalues, sphere
integrals) is built on the four primitives in this module.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .backend import jacobi_table
from .errors import InternalError, ParameterError

__all__ = [
    "QuadratureGrid",
    "log_gamma",
    "gamma_ratio",
    "jacobi_eval",
    "gauss_jacobi",
    "surface_area",
]

# Lanczos approximation, g = 7, 9 terms (Godfrey's coefficients).  Accurate to
# a few ulp for real arguments > 0, which the quadrature prefactors and the
# operator eigenvalue ratios need (targets are 1e-13 relative).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for x > 0 (Lanczos series)."""
    if not x > 0.0:
        raise ParameterError(f"log_gamma requires x > 0, got {x}")
    z = x - 1.0
    series = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        series += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(series)


def gamma_ratio(a: float, s: float) -> float:
    """Gamma(a+s) / Gamma(a-s), evaluated in log space to avoid overflow."""
    if not (a - s > 0.0 and a + s > 0.0):
        raise ParameterError(f"gamma_ratio requires a-s > 0 and a+s > 0, got a={a}, s={s}")
    return math.exp(log_gamma(a + s) - log_gamma(a - s))


def surface_area(d: int) -> float:
    """Surface measure of the unit sphere S^(d-1) in R^d: 2 pi^(d/2) / Gamma(d/2)."""
    if d < 1:
        raise ParameterError(f"surface_area requires d >= 1, got {d}")
    return 2.0 * math.pi ** (d / 2.0) / math.exp(log_gamma(d / 2.0))


def jacobi_eval(j: int, alpha: float, beta: float, t):
    """Jacobi polynomial P_j^(alpha,beta) at t (scalar or array).

    Three-term recurrence; degrees 0 and 1 by closed form.
    """
    if j < 0:
        raise ParameterError(f"jacobi_eval requires j >= 0, got {j}")
    _check_exponents(alpha, beta)
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    vals = jacobi_table(j, alpha, beta, np.ascontiguousarray(arr.ravel()))[:, j]
    vals = vals.reshape(arr.shape)
    return float(vals[()]) if np.isscalar(t) or np.ndim(t) == 0 else vals


@dataclass(frozen=True)
class QuadratureGrid:
    """Gauss-Jacobi rule on (-1, 1) for the weight (1-t)^alpha (1+t)^beta.

    ``measure_scale`` carries the constant turning the 1-D weighted integral
    into the full sphere integral; a bare rule uses 1.0.
    """

    alpha: float
    beta: float
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    measure_scale: float = 1.0

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ParameterError("nodes and weights must be 1-D arrays of equal length")
        if not (np.all(np.diff(nodes) > 0) and nodes[0] > -1.0 and nodes[-1] < 1.0):
            raise ParameterError("nodes must be strictly increasing inside (-1, 1)")
        if not np.all(weights > 0):
            raise ParameterError("weights must be strictly positive")
        if not self.measure_scale > 0:
            raise ParameterError("measure_scale must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def count(self) -> int:
        return self.nodes.size

    def total_mass(self) -> float:
        """Closed-form total weight 2^(alpha+beta+1) B(alpha+1, beta+1)."""
        return math.exp(
            (self.alpha + self.beta + 1.0) * math.log(2.0)
            + log_gamma(self.alpha + 1.0)
            + log_gamma(self.beta + 1.0)
            - log_gamma(self.alpha + self.beta + 2.0)
        )


def _check_exponents(alpha: float, beta: float) -> None:
    if not (alpha > -1.0 and beta > -1.0):
        raise ParameterError(f"Jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}")


def _jacobi_deriv_at(count: int, alpha: float, beta: float, x: np.ndarray) -> np.ndarray:
    # d/dt P_n^(a,b) = (n+a+b+1)/2 * P_{n-1}^(a+1,b+1)
    if count == 0:
        return np.zeros_like(x)
    shifted = jacobi_table(count - 1, alpha + 1.0, beta + 1.0, x)[:, count - 1]
    return 0.5 * (count + alpha + beta + 1.0) * shifted


def _newton_nodes(count: int, alpha: float, beta: float) -> np.ndarray | None:
    """Roots of P_count^(alpha,beta) by Newton from Chebyshev initial guesses."""
    k = np.arange(count, dtype=float)
    x = -np.cos(np.pi * (2.0 * k + 1.0) / (2.0 * count))
    for _ in range(60):
        p = jacobi_table(count, alpha, beta, x)[:, count]
        dp = _jacobi_deriv_at(count, alpha, beta, x)
        if np.any(dp == 0.0):
            return None
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        return None
    if not (np.all(np.diff(x) > 0) and x[0] > -1.0 and x[-1] < 1.0):
        return None
    return x


def _golub_welsch_nodes(count: int, alpha: float, beta: float) -> np.ndarray:
    """Roots as eigenvalues of the symmetric tridiagonal Jacobi matrix."""
    i = np.arange(count, dtype=float)
    ab = alpha + beta
    denom = (2.0 * i + ab) * (2.0 * i + ab + 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = np.where(denom == 0.0, (beta - alpha) / (ab + 2.0), (beta**2 - alpha**2) / denom)
    j = np.arange(1.0, count)
    s = 2.0 * j + ab
    off = np.sqrt(4.0 * j * (j + alpha) * (j + beta) * (j + ab) / (s * s * (s * s - 1.0)))
    nodes, _ = eigh_tridiagonal(diag, off)
    return np.sort(nodes)


def gauss_jacobi(count: int, alpha: float, beta: float) -> QuadratureGrid:
    """Gauss-Jacobi rule with ``count`` nodes for (1-t)^alpha (1+t)^beta.

    Nodes come from Newton iteration on the recurrence (Chebyshev starting
    guesses); if that fails to produce a clean strictly-increasing root set,
    falls back to the Golub-Welsch tridiagonal eigenproblem.  Weights use the
    derivative formula w_i = C_n / ((1-x_i^2) P_n'(x_i)^2).
    """
    if count < 1:
        raise ParameterError(f"gauss_jacobi requires count >= 1, got {count}")
    _check_exponents(alpha, beta)

    x = _newton_nodes(count, alpha, beta)
    if x is None:
        x = _golub_welsch_nodes(count, alpha, beta)
        if not (np.all(np.diff(x) > 0) and x[0] > -1.0 and x[-1] < 1.0):
            raise InternalError("Gauss-Jacobi root finding failed for "
                                f"count={count}, alpha={alpha}, beta={beta}")

    if alpha == beta:
        # enforce exact symmetry so parity cancellations hold to the bit
        x = 0.5 * (x - x[::-1])

    log_cn = (
        (alpha + beta + 1.0) * math.log(2.0)
        + log_gamma(count + alpha + 1.0)
        + log_gamma(count + beta + 1.0)
        - log_gamma(count + alpha + beta + 1.0)
        - log_gamma(count + 1.0)
    )
    dp = _jacobi_deriv_at(count, alpha, beta, x)
    w = math.exp(log_cn) / ((1.0 - x * x) * dp * dp)
    if alpha == beta:
        w = 0.5 * (w + w[::-1])
    if not np.all(np.isfinite(w)):
        raise InternalError("Gauss-Jacobi weights are not finite")
    return QuadratureGrid(alpha=alpha, beta=beta, nodes=x, weights=w)
