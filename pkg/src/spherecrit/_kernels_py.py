"""Pure-numpy implementations of the hot kernels.

Mirrors the compiled module ``_kernels``; either one can back the package.
Keep the two in agreement: test_backends.py checks them against each other.
"""

import numpy as np

BACKEND_NAME = "python"

# nehari_fixed_point status codes
CONVERGED = 0
MAX_ITER = 1
DIVERGED = 2


def jacobi_table(nmax: int, alpha: float, beta: float, t: np.ndarray) -> np.ndarray:
    """Table P_j^(alpha,beta)(t_i) for j = 0..nmax, shape (len(t), nmax+1)."""
    t = np.asarray(t, dtype=float)
    out = np.empty((t.size, nmax + 1))
    out[:, 0] = 1.0
    if nmax == 0:
        return out
    out[:, 1] = 0.5 * (alpha + beta + 2.0) * t + 0.5 * (alpha - beta)
    ab = alpha + beta
    for j in range(1, nmax):
        c1 = 2.0 * (j + 1.0) * (j + ab + 1.0) * (2.0 * j + ab)
        c2 = (2.0 * j + ab + 1.0) * (alpha * alpha - beta * beta)
        c3 = (2.0 * j + ab) * (2.0 * j + ab + 1.0) * (2.0 * j + ab + 2.0)
        c4 = 2.0 * (j + alpha) * (j + beta) * (2.0 * j + ab + 2.0)
        out[:, j + 1] = ((c2 + c3 * t) * out[:, j] - c4 * out[:, j - 1]) / c1
    return out


def nehari_fixed_point(basis, wq, lam, c_init, mask, q, tau, tol, max_iter):
    """Preconditioned fixed-point loop with Nehari rescaling.

    Iterates c <- t* [(1-tau) c + tau mask (g / lam)] where g is the
    quadrature projection of |w|^(q-2) w and t* rescales onto the Nehari set.
    Returns (best_c, best_dual, iterations, status); best is measured by the
    dual norm of the full residual lam*c - g.
    """
    basis = np.asarray(basis)
    wq = np.asarray(wq)
    lam = np.asarray(lam)
    mask = np.asarray(mask).astype(bool)

    c = np.array(c_init, dtype=float)
    v = basis @ c
    best_c = c.copy()
    best_dual = np.inf
    status = MAX_ITER
    it = 0
    for it in range(1, max_iter + 1):
        f = np.abs(v) ** (q - 2.0) * v
        g = basis.T @ (wq * f)
        r = lam * c - g
        dual = np.sqrt(np.sum(r * r / lam))
        if not np.isfinite(dual):
            return best_c, best_dual, it, DIVERGED
        if dual < best_dual:
            best_dual = dual
            best_c[:] = c
        if dual <= tol:
            status = CONVERGED
            break
        cn = (1.0 - tau) * c + tau * np.where(mask, g / lam, 0.0)
        vn = basis @ cn
        dirichlet = np.sum(lam * cn * cn)
        qmass = np.sum(wq * np.abs(vn) ** q)
        if not (np.isfinite(dirichlet) and np.isfinite(qmass)) or dirichlet <= 0.0 or qmass <= 0.0:
            return best_c, best_dual, it, DIVERGED
        tstar = (dirichlet / qmass) ** (1.0 / (q - 2.0))
        c = tstar * cn
        v = tstar * vn
    return best_c, best_dual, it, status
