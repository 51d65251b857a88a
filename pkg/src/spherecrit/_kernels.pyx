# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Jacobi recurrence table and the Nehari fixed point.

Same contract as ``_kernels_py``; the loop bodies are plain C so the solver
pays no per-iteration interpreter overhead.
"""

import numpy as np

from libc.math cimport fabs, pow, sqrt, isfinite

BACKEND_NAME = "compiled"

CONVERGED = 0
MAX_ITER = 1
DIVERGED = 2


def jacobi_table(int nmax, double alpha, double beta, const double[::1] t):
    """Table P_j^(alpha,beta)(t_i) for j = 0..nmax, shape (len(t), nmax+1)."""
    cdef Py_ssize_t nt = t.shape[0]
    out_arr = np.empty((nt, nmax + 1))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i
    cdef int j
    cdef double ab = alpha + beta
    cdef double c1, c2, c3, c4, x
    for i in range(nt):
        out[i, 0] = 1.0
    if nmax == 0:
        return out_arr
    for i in range(nt):
        out[i, 1] = 0.5 * (ab + 2.0) * t[i] + 0.5 * (alpha - beta)
    for j in range(1, nmax):
        c1 = 2.0 * (j + 1.0) * (j + ab + 1.0) * (2.0 * j + ab)
        c2 = (2.0 * j + ab + 1.0) * (alpha * alpha - beta * beta)
        c3 = (2.0 * j + ab) * (2.0 * j + ab + 1.0) * (2.0 * j + ab + 2.0)
        c4 = 2.0 * (j + alpha) * (j + beta) * (2.0 * j + ab + 2.0)
        for i in range(nt):
            x = t[i]
            out[i, j + 1] = ((c2 + c3 * x) * out[i, j] - c4 * out[i, j - 1]) / c1
    return out_arr


def nehari_fixed_point(const double[:, ::1] basis, const double[::1] wq,
                       const double[::1] lam,
                       const double[::1] c_init, const unsigned char[::1] mask,
                       double q, double tau, double tol, long max_iter):
    """Preconditioned fixed-point loop with Nehari rescaling (see _kernels_py)."""
    cdef Py_ssize_t nn = basis.shape[0]
    cdef Py_ssize_t nm = basis.shape[1]

    c_arr = np.array(c_init, dtype=np.float64)
    best_arr = np.array(c_init, dtype=np.float64)
    v_arr = np.empty(nn)
    vn_arr = np.empty(nn)
    g_arr = np.empty(nm)
    cn_arr = np.empty(nm)
    cdef double[::1] c = c_arr
    cdef double[::1] best = best_arr
    cdef double[::1] v = v_arr
    cdef double[::1] vn = vn_arr
    cdef double[::1] g = g_arr
    cdef double[::1] cn = cn_arr

    cdef double best_dual = np.inf
    cdef double qm2 = q - 2.0
    cdef double dual, acc, f, r, dirichlet, qmass, tstar, av
    cdef Py_ssize_t i, j
    cdef long it = 0
    cdef int status = MAX_ITER

    for i in range(nn):
        acc = 0.0
        for j in range(nm):
            acc += basis[i, j] * c[j]
        v[i] = acc

    for it in range(1, max_iter + 1):
        # g = B^T (wq * |v|^(q-2) v)
        for j in range(nm):
            g[j] = 0.0
        for i in range(nn):
            av = fabs(v[i])
            f = wq[i] * pow(av, qm2) * v[i]
            for j in range(nm):
                g[j] += basis[i, j] * f
        dual = 0.0
        for j in range(nm):
            r = lam[j] * c[j] - g[j]
            dual += r * r / lam[j]
        dual = sqrt(dual)
        if not isfinite(dual):
            return best_arr, best_dual, it, DIVERGED
        if dual < best_dual:
            best_dual = dual
            for j in range(nm):
                best[j] = c[j]
        if dual <= tol:
            status = CONVERGED
            break
        dirichlet = 0.0
        for j in range(nm):
            if mask[j]:
                cn[j] = (1.0 - tau) * c[j] + tau * g[j] / lam[j]
            else:
                cn[j] = (1.0 - tau) * c[j]
            dirichlet += lam[j] * cn[j] * cn[j]
        qmass = 0.0
        for i in range(nn):
            acc = 0.0
            for j in range(nm):
                acc += basis[i, j] * cn[j]
            vn[i] = acc
            qmass += wq[i] * pow(fabs(acc), q)
        if not (isfinite(dirichlet) and isfinite(qmass)) or dirichlet <= 0.0 or qmass <= 0.0:
            return best_arr, best_dual, it, DIVERGED
        tstar = pow(dirichlet / qmass, 1.0 / qm2)
        for j in range(nm):
            c[j] = tstar * cn[j]
        for i in range(nn):
            v[i] = tstar * vn[i]
    return best_arr, best_dual, it, status
