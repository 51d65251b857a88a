"""Selects the compiled kernel extension, falling back to pure numpy.

The two backends implement the same contract; which one is active only
affects speed.  ``backend_name()`` reports the choice (the benchmark script
and the test suite exercise both explicitly).
"""

import numpy as np

try:
    from . import _kernels as _impl

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build
    from . import _kernels_py as _impl

    HAVE_COMPILED = False

FP_CONVERGED = _impl.CONVERGED
FP_MAX_ITER = _impl.MAX_ITER
FP_DIVERGED = _impl.DIVERGED


def backend_name() -> str:
    return _impl.BACKEND_NAME


def jacobi_table(nmax: int, alpha: float, beta: float, t) -> np.ndarray:
    """Table P_j^(alpha,beta)(t_i), j = 0..nmax, shape (len(t), nmax+1)."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    return np.asarray(_impl.jacobi_table(int(nmax), float(alpha), float(beta), t))


def nehari_fixed_point(basis, wq, lam, c_init, mask, q, tau, tol, max_iter):
    """Run the Nehari-projected fixed-point loop on the active backend."""
    basis = np.ascontiguousarray(basis, dtype=np.float64)
    wq = np.ascontiguousarray(wq, dtype=np.float64)
    lam = np.ascontiguousarray(lam, dtype=np.float64)
    c_init = np.ascontiguousarray(c_init, dtype=np.float64)
    mask = np.ascontiguousarray(mask, dtype=np.uint8)
    c, dual, iterations, status = _impl.nehari_fixed_point(
        basis, wq, lam, c_init, mask,
        float(q), float(tau), float(tol), int(max_iter),
    )
    return np.asarray(c), float(dual), int(iterations), int(status)
