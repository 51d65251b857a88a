"""Finite-difference oracle for order s = 1.

At s = 1 the spectral multiplier is l(l+n-1) + n(n-2)/4, i.e. the operator
is the invariant Laplace-Beltrami operator plus a constant shift, and the
critical-point equation reduces to a degenerate second-order ODE in t:

    -4[(1-t^2) w'' + (beta-alpha - (alpha+beta+2) t) w'] + n(n-2)/4 w
        = |w|^(q-2) w.

Collocation on a uniform interior mesh with one-sided second-order stencils
at the ends (the (1-t^2) degeneracy supplies natural boundary behaviour)
gives a discretization completely independent of the spectral solver, which
is the point: agreement between the two validates both.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import ParameterError, UnsupportedOrderError
from .harmonics import ProblemParams, measure_scale

__all__ = [
    "ODESolution",
    "ode_mesh",
    "laplace_beltrami_fd",
    "ode_residual",
    "ode_solve",
    "nehari_prescale",
    "residual_floor",
    "richardson_pair",
]

_BANDS = (3, 3)  # one-sided end stencils widen the tridiagonal to 4 entries


@dataclass
class ODESolution:
    values: np.ndarray = field(repr=False)
    residual_sup: float
    steps: int
    converged: bool
    trivial: bool


def ode_mesh(count: int) -> np.ndarray:
    """Uniform mesh of ``count`` points interior to (-1, 1), symmetric in t."""
    if count < 8:
        raise ParameterError(f"mesh needs at least 8 points, got {count}")
    h = 2.0 / (count + 1)
    t = (np.arange(count) + 1.0) * h - 1.0
    return 0.5 * (t - t[::-1])  # force exact antisymmetry of the mesh


def _require_order_one(params: ProblemParams) -> None:
    if params.s != 1.0:
        raise UnsupportedOrderError(
            f"the finite-difference oracle only covers s = 1, got s = {params.s}"
        )


def _derivatives(w: np.ndarray, h: float):
    d1 = np.empty_like(w)
    d2 = np.empty_like(w)
    d1[1:-1] = (w[2:] - w[:-2]) / (2.0 * h)
    d2[1:-1] = (w[2:] - 2.0 * w[1:-1] + w[:-2]) / (h * h)
    d1[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h)
    d2[0] = (2.0 * w[0] - 5.0 * w[1] + 4.0 * w[2] - w[3]) / (h * h)
    d1[-1] = (3.0 * w[-1] - 4.0 * w[-2] + w[-3]) / (2.0 * h)
    d2[-1] = (2.0 * w[-1] - 5.0 * w[-2] + 4.0 * w[-3] - w[-4]) / (h * h)
    return d1, d2


def laplace_beltrami_fd(params: ProblemParams, w_values, mesh) -> np.ndarray:
    """-Laplace_{S^n} on an invariant profile, second-order differences:
    -4[(1-t^2) w'' + (beta-alpha - (alpha+beta+2) t) w']."""
    w = np.asarray(w_values, dtype=float)
    t = np.asarray(mesh, dtype=float)
    if w.shape != t.shape:
        raise ParameterError("values and mesh must have matching shapes")
    h = t[1] - t[0]
    d1, d2 = _derivatives(w, h)
    drift = (params.beta - params.alpha) - (params.alpha + params.beta + 2.0) * t
    return -4.0 * ((1.0 - t * t) * d2 + drift * d1)


def ode_residual(params: ProblemParams, w_values, mesh) -> np.ndarray:
    """Pointwise residual of the order-1 critical-point equation."""
    _require_order_one(params)
    w = np.asarray(w_values, dtype=float)
    shift = params.n * (params.n - 2.0) / 4.0
    return (
        laplace_beltrami_fd(params, w, mesh)
        + shift * w
        - np.abs(w) ** (params.q - 2.0) * w
    )


def _linear_banded(params: ProblemParams, mesh: np.ndarray) -> np.ndarray:
    """Banded matrix (l=u=3) of the linear part, solve_banded layout."""
    t = mesh
    count = t.size
    h = t[1] - t[0]
    shift = params.n * (params.n - 2.0) / 4.0
    lead = -4.0 * (1.0 - t * t)
    drift = -4.0 * ((params.beta - params.alpha) - (params.alpha + params.beta + 2.0) * t)

    l, u = _BANDS
    ab = np.zeros((l + u + 1, count))

    def put(i, j, value):
        ab[u + i - j, j] += value

    for i in range(1, count - 1):
        put(i, i - 1, lead[i] / h**2 - drift[i] / (2.0 * h))
        put(i, i, -2.0 * lead[i] / h**2 + shift)
        put(i, i + 1, lead[i] / h**2 + drift[i] / (2.0 * h))
    # one-sided second-order stencils at the two mesh ends
    for j, c2, c1 in ((0, 2.0, -3.0), (1, -5.0, 4.0), (2, 4.0, -1.0), (3, -1.0, 0.0)):
        put(0, j, lead[0] * c2 / h**2 + drift[0] * c1 / (2.0 * h))
    put(0, 0, shift)
    last = count - 1
    for dj, c2, c1 in ((0, 2.0, 3.0), (1, -5.0, -4.0), (2, 4.0, 1.0), (3, -1.0, 0.0)):
        put(last, last - dj, lead[last] * c2 / h**2 + drift[last] * c1 / (2.0 * h))
    put(last, last, shift)
    return ab


def _antisymmetrize(w: np.ndarray) -> np.ndarray:
    return 0.5 * (w - w[::-1])


def nehari_prescale(params: ProblemParams, values, mesh) -> np.ndarray:
    """Rescale mesh values onto the discrete Nehari set (ansatz conditioning).

    Uses Riemann sums in the weighted 1-D measure; crude is fine, this only
    sets the amplitude from which the damped Newton starts.
    """
    _require_order_one(params)
    w = np.asarray(values, dtype=float)
    t = np.asarray(mesh, dtype=float)
    h = t[1] - t[0]
    weight = (1.0 - t) ** params.alpha * (1.0 + t) ** params.beta
    dmeas = measure_scale(params) * weight * h
    shift = params.n * (params.n - 2.0) / 4.0
    aw = laplace_beltrami_fd(params, w, t) + shift * w
    dirichlet = float(np.sum(w * aw * dmeas))
    qmass = float(np.sum(np.abs(w) ** params.q * dmeas))
    if dirichlet <= 0.0 or qmass <= 0.0:
        raise ParameterError("cannot prescale: degenerate discrete Nehari quotient")
    return (dirichlet / qmass) ** (1.0 / (params.q - 2.0)) * w


def ode_solve(
    params: ProblemParams,
    ansatz_values,
    mesh,
    antisymmetric: bool = False,
    tol: float = 1e-9,
    max_steps: int = 200,
) -> ODESolution:
    """Damped Newton on the collocated system.

    With ``antisymmetric`` (valid only for equal blocks) the constraint
    w(-t) = -w(t) is re-imposed after every update; the discrete operator
    maps that subspace to itself, so this is a projection, not a fudge.
    """
    _require_order_one(params)
    t = np.asarray(mesh, dtype=float)
    w = np.asarray(ansatz_values, dtype=float).copy()
    if w.shape != t.shape:
        raise ParameterError("ansatz and mesh must have matching shapes")
    if antisymmetric:
        if params.k != params.m:
            raise ParameterError("antisymmetric constraint needs equal blocks (odd n)")
        w = _antisymmetrize(w)

    qm1 = params.q - 1.0
    qm2 = params.q - 2.0
    ab_lin = _linear_banded(params, t)
    diag_row = _BANDS[1]

    f = ode_residual(params, w, t)
    fnorm = float(np.max(np.abs(f)))
    steps = 0
    while fnorm > tol and steps < max_steps:
        ab = ab_lin.copy()
        ab[diag_row, :] -= qm1 * np.abs(w) ** qm2
        delta = solve_banded(_BANDS, ab, -f)
        sigma = 1.0
        accepted = False
        while sigma >= 2.0**-20:
            w_try = w + sigma * delta
            if antisymmetric:
                w_try = _antisymmetrize(w_try)
            f_try = ode_residual(params, w_try, t)
            fnorm_try = float(np.max(np.abs(f_try)))
            if np.isfinite(fnorm_try) and fnorm_try < fnorm:
                w, f, fnorm = w_try, f_try, fnorm_try
                accepted = True
                break
            sigma *= 0.5
        steps += 1
        if not accepted:
            break
    converged = fnorm <= tol
    trivial = converged and float(np.max(np.abs(w))) <= 1e-8
    return ODESolution(values=w, residual_sup=fnorm, steps=steps,
                       converged=converged, trivial=trivial)


def residual_floor(count: int) -> float:
    """Roundoff floor of the collocated residual on a ``count``-point mesh.

    The second-difference stencil amplifies value roundoff by 1/h^2, so the
    residual cannot be driven below about eps * |w| / h^2; the constant here
    is calibrated with ~4x headroom for O(1) amplitudes.
    """
    return 2.5e-16 * count * count


def richardson_pair(
    params: ProblemParams,
    ansatz_for,
    count: int,
    antisymmetric: bool = False,
    tol: float = 1e-9,
):
    """Solve on nested meshes (count and 2*count+1) and extrapolate.

    ``ansatz_for(mesh)`` supplies the starting values on each mesh.  The
    per-mesh Newton tolerance is relaxed to the stencil roundoff floor when
    that exceeds ``tol``; at that point the leftover residual perturbs the
    solution far below the discretization error the extrapolation removes.
    Returns (coarse_mesh, extrapolated_values, coarse_solution, fine_solution);
    the extrapolated values live on the coarse mesh (its points are shared).
    """
    coarse_mesh = ode_mesh(count)
    fine_mesh = ode_mesh(2 * count + 1)
    coarse = ode_solve(params, ansatz_for(coarse_mesh), coarse_mesh,
                       antisymmetric=antisymmetric,
                       tol=max(tol, residual_floor(count)))
    fine = ode_solve(params, ansatz_for(fine_mesh), fine_mesh,
                     antisymmetric=antisymmetric,
                     tol=max(tol, residual_floor(2 * count + 1)))
    extrapolated = (4.0 * fine.values[1::2] - coarse.values) / 3.0
    return coarse_mesh, extrapolated, coarse, fine
