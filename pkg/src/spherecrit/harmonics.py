"""Orthonormal basis of block-rotation-invariant spherical harmonics.

Functions on S^n invariant under O(k) x O(m) (k + m = n + 1) depend only on
t = |xi_1|^2 - |xi_2|^2.  One invariant harmonic exists per even degree
l = 2j and is a Jacobi polynomial in t with exponents (m/2 - 1, k/2 - 1);
this module builds the basis, the matching quadrature, and the transforms
between node values and coefficients.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .backend import jacobi_table
from .errors import ParameterError
from .specialfns import QuadratureGrid, gauss_jacobi, surface_area

__all__ = [
    "ProblemParams",
    "InvariantBasis",
    "make_params",
    "measure_scale",
    "sphere_area",
    "build_basis",
    "default_quad_count",
    "analyze",
    "synthesize",
    "laplace_beltrami_eigenvalue",
]


@dataclass(frozen=True)
class ProblemParams:
    """Dimension, operator order, critical exponent and symmetry block data."""

    n: int
    s: float
    q: float
    k: int
    m: int
    alpha: float
    beta: float


def make_params(n: int, s: float) -> ProblemParams:
    """Validate (n, s) and derive q = 2n/(n-2s) and the block exponents."""
    if int(n) != n or n < 3:
        raise ParameterError(f"dimension n must be an integer >= 3, got {n}")
    n = int(n)
    s = float(s)
    if not (0.0 < s < n / 2.0):
        raise ParameterError(f"order s must lie in (0, n/2) = (0, {n/2}), got {s}")
    k = (n + 1) // 2
    m = n + 1 - k
    return ProblemParams(
        n=n,
        s=s,
        q=2.0 * n / (n - 2.0 * s),
        k=k,
        m=m,
        alpha=m / 2.0 - 1.0,
        beta=k / 2.0 - 1.0,
    )


def sphere_area(n: int) -> float:
    """Total measure of S^n."""
    return surface_area(n + 1)


def measure_scale(params: ProblemParams) -> float:
    """Constant C with  int_{S^n} f dxi = C int_{-1}^{1} f(t) (1-t)^a (1+t)^b dt
    for block-invariant f; C = |S^(k-1)| |S^(m-1)| / 2^((n+1)/2)."""
    return (
        surface_area(params.k)
        * surface_area(params.m)
        / 2.0 ** ((params.n + 1) / 2.0)
    )


def laplace_beltrami_eigenvalue(params: ProblemParams, j: int) -> float:
    """Eigenvalue l(l + n - 1) of -Laplace on S^n at degree l = 2j."""
    if j < 0:
        raise ParameterError(f"basis index must be >= 0, got {j}")
    return 2.0 * j * (2.0 * j + params.n - 1.0)


def default_quad_count(max_index: int) -> int:
    """4x oversampled node count, floored at 64, to tame nonlinear aliasing."""
    return max(64, 4 * (max_index + 1))


@dataclass
class InvariantBasis:
    """Orthonormal invariant harmonics evaluated on a Gauss-Jacobi grid.

    ``table[i, j]`` holds Y_j(t_i) = N_j P_j^(alpha,beta)(t_i); ``wq`` holds
    the sphere-measure quadrature weights C * w_i, so that the Gram matrix
    table^T diag(wq) table is the identity.
    """

    params: ProblemParams
    max_index: int
    norm_constants: np.ndarray = field(repr=False)
    grid: QuadratureGrid = field(repr=False)
    table: np.ndarray = field(repr=False)
    wq: np.ndarray = field(repr=False)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def size(self) -> int:
        return self.max_index + 1

    def values_at(self, t) -> np.ndarray:
        """Matrix Y_j(t_i) at arbitrary points t (not grid-bound)."""
        t = np.asarray(t, dtype=float)
        raw = jacobi_table(self.max_index, self.params.alpha, self.params.beta, t.ravel())
        return (raw * self.norm_constants).reshape(*t.shape, self.size)


def build_basis(params: ProblemParams, max_index: int, quad_count: int) -> InvariantBasis:
    """Construct the orthonormal basis; N_j chosen so the quadrature Gram
    matrix is the identity (self-enforcing orthonormality)."""
    if max_index < 0:
        raise ParameterError(f"max_index must be >= 0, got {max_index}")
    if quad_count < 2 * (max_index + 1):
        raise ParameterError(
            f"quad_count={quad_count} too small for max_index={max_index}; "
            f"need at least {2 * (max_index + 1)}"
        )
    scale = measure_scale(params)
    grid = replace(gauss_jacobi(quad_count, params.alpha, params.beta), measure_scale=scale)
    raw = jacobi_table(max_index, params.alpha, params.beta, grid.nodes)
    wq = scale * grid.weights
    norms = 1.0 / np.sqrt(wq @ (raw * raw))
    return InvariantBasis(
        params=params,
        max_index=max_index,
        norm_constants=norms,
        grid=grid,
        table=raw * norms,
        wq=wq,
    )


def analyze(basis: InvariantBasis, node_values) -> np.ndarray:
    """Coefficients c_j = int f Y_j dxi via the basis quadrature."""
    values = np.asarray(node_values, dtype=float)
    if values.shape != (basis.grid.count,):
        raise ParameterError(
            f"expected {basis.grid.count} node values, got shape {values.shape}"
        )
    return basis.table.T @ (basis.wq * values)


def synthesize(basis: InvariantBasis, coefficients) -> np.ndarray:
    """Node values sum_j c_j Y_j(t_i); accepts up to max_index+1 coefficients."""
    c = np.asarray(coefficients, dtype=float)
    if c.size > basis.size:
        raise ParameterError(
            f"got {c.size} coefficients for a basis with {basis.size} functions"
        )
    return basis.table[:, : c.size] @ c
