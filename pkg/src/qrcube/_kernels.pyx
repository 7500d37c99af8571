# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; mirrors ``_pykernels`` operation for operation."""
import numpy as np

from libc.math cimport exp, sin, cos, sqrt, fabs, pow, M_PI
from libc.stdlib cimport malloc, free

from .errors import ConvergenceError

NAME = "compiled"


def poly_roots(coeffs, int maxiter=200, double tol=1e-13):
    cdef double complex[:] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef int n = c.shape[0] - 1
    cdef int k, j, it
    cdef double bound = 0.0, radius, corr, maxcorr = np.inf
    cdef double complex zk, p, dp, ratio, s, d, den, w
    if n <= 0:
        return [], True, 0, 0.0
    for k in range(1, n + 1):
        bound = max(bound, pow(abs(c[k]), 1.0 / k))
    radius = 2.0 * bound if bound > 0.0 else 1.0
    z_arr = radius * np.exp(1j * (2.0 * np.pi * np.arange(n) / n + 0.4))
    cdef double complex[:] z = z_arr
    for it in range(1, maxiter + 1):
        maxcorr = 0.0
        for k in range(n):
            zk = z[k]
            p = c[0]
            dp = 0
            for j in range(1, n + 1):
                dp = dp * zk + p
                p = p * zk + c[j]
            if p == 0:
                continue
            if dp == 0:
                ratio = p
            else:
                ratio = p / dp
            s = 0
            for j in range(n):
                if j != k:
                    d = zk - z[j]
                    if d != 0:
                        s = s + 1.0 / d
            den = 1.0 - ratio * s
            w = ratio / den if den != 0 else ratio
            z[k] = zk - w
            corr = abs(w) / (1.0 + abs(z[k]))
            if corr > maxcorr:
                maxcorr = corr
        if maxcorr <= tol:
            return [complex(v) for v in z_arr], True, it, maxcorr
    return [complex(v) for v in z_arr], False, maxiter, maxcorr


ctypedef double (*fn1d)(double x, void* ctx) noexcept nogil


cdef struct QuadCtx:
    int n_id
    int m_id
    double a
    double r
    double t
    double tol_t
    double tol_p
    int max_depth
    int min_depth
    double worst


cdef double _asr(fn1d f, void* ctx, double a, double b, double eps, double whole,
                 double fa, double fm, double fb, int level, int max_depth,
                 int min_depth, double* worst) noexcept nogil:
    cdef double m = 0.5 * (a + b)
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = f(lm, ctx)
    cdef double frm = f(rm, ctx)
    cdef double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    cdef double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    cdef double delta = left + right - whole
    if level >= min_depth and fabs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if level >= max_depth:
        if fabs(delta) > worst[0]:
            worst[0] = fabs(delta)
        return left + right
    return (_asr(f, ctx, a, m, 0.5 * eps, left, fa, flm, fm, level + 1, max_depth, min_depth, worst)
            + _asr(f, ctx, m, b, 0.5 * eps, right, fm, frm, fb, level + 1, max_depth, min_depth, worst))


cdef double _adaptive(fn1d f, void* ctx, double a, double b, double eps,
                      int max_depth, int min_depth, double* worst) noexcept nogil:
    cdef double fa = f(a, ctx)
    cdef double fm = f(0.5 * (a + b), ctx)
    cdef double fb = f(b, ctx)
    cdef double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _asr(f, ctx, a, b, eps, whole, fa, fm, fb, 0, max_depth, min_depth, worst)


cdef inline double _orbital(int oid, double r, double t, double p, double a) noexcept nogil:
    cdef double x = r / a
    cdef double norm, e
    if oid == 0:
        return exp(-x) / sqrt(M_PI * a * a * a)
    norm = 1.0 / sqrt(32.0 * M_PI * a * a * a)
    e = exp(-0.5 * x)
    if oid == 1:
        return norm * (2.0 - x) * e
    if oid == 2:
        return norm * x * e * cos(t)
    if oid == 3:
        return norm * x * e * sin(t) * cos(p)
    return norm * x * e * sin(t) * sin(p)


cdef double _over_phi(double p, void* ctx) noexcept nogil:
    cdef QuadCtx* q = <QuadCtx*> ctx
    return (_orbital(q.n_id, q.r, q.t, p, q.a) * _orbital(q.m_id, q.r, q.t, p, q.a)
            * q.r * cos(q.t) * q.r * q.r * sin(q.t))


cdef double _over_theta(double t, void* ctx) noexcept nogil:
    cdef QuadCtx* q = <QuadCtx*> ctx
    q.t = t
    return _adaptive(_over_phi, ctx, 0.0, 2.0 * M_PI, q.tol_p, q.max_depth, q.min_depth, &q.worst)


cdef double _over_r(double r, void* ctx) noexcept nogil:
    cdef QuadCtx* q = <QuadCtx*> ctx
    q.r = r
    return _adaptive(_over_theta, ctx, 0.0, M_PI, q.tol_t, q.max_depth, q.min_depth, &q.worst)


def dipole_triple(int n_id, int m_id, double a, double r_max, double tol,
                  int max_depth=40, int min_depth=3):
    if not (0 <= n_id <= 4 and 0 <= m_id <= 4):
        raise ValueError(f"unknown orbital id pair ({n_id}, {m_id})")
    cdef QuadCtx q
    cdef double value
    q.n_id = n_id
    q.m_id = m_id
    q.a = a
    q.r = 0.0
    q.t = 0.0
    q.tol_t = tol / (4.0 * r_max)
    q.tol_p = tol / (4.0 * M_PI * r_max)
    q.max_depth = max_depth
    q.min_depth = min_depth
    q.worst = 0.0
    with nogil:
        value = _adaptive(_over_r, &q, 0.0, r_max, 0.5 * tol, max_depth, min_depth, &q.worst)
    if q.worst > 0.0:
        raise ConvergenceError("adaptive Simpson hit its subdivision limit", q.worst)
    return value


cdef bint _dfs(int[:, ::1] perms, int[::1] inv, unsigned char[:, ::1] com,
               int[:, ::1] stack, int[::1] target, int[::1] path,
               int level, int remaining, int prev) noexcept nogil:
    cdef int nmoves = perms.shape[0]
    cdef int n = perms.shape[1]
    cdef int i, k
    cdef bint same
    for i in range(nmoves):
        if prev >= 0 and (inv[prev] == i or (i < prev and com[prev, i])):
            continue
        for k in range(n):
            stack[level + 1, k] = stack[level, perms[i, k]]
        path[level] = i
        if remaining == 1:
            same = True
            for k in range(n):
                if stack[level + 1, k] != target[k]:
                    same = False
                    break
            if same:
                return True
        elif _dfs(perms, inv, com, stack, target, path, level + 1, remaining - 1, i):
            return True
    return False


def ids_search(start, target, moves, inverse, commute, int max_depth):
    cdef int[::1] s0 = np.ascontiguousarray(start, dtype=np.intc)
    cdef int[::1] tgt = np.ascontiguousarray(target, dtype=np.intc)
    cdef int[:, ::1] perms = np.ascontiguousarray(moves, dtype=np.intc).reshape(-1, s0.shape[0])
    cdef int[::1] inv = np.ascontiguousarray(inverse, dtype=np.intc)
    cdef unsigned char[:, ::1] com = np.ascontiguousarray(commute, dtype=np.uint8).reshape(
        perms.shape[0], perms.shape[0])
    cdef int n = s0.shape[0]
    cdef int depth, k
    cdef bint found = False
    if np.array_equal(np.asarray(s0), np.asarray(tgt)):
        return []
    stack_arr = np.empty((max_depth + 1, n), dtype=np.intc)
    path_arr = np.empty(max(max_depth, 1), dtype=np.intc)
    cdef int[:, ::1] stack = stack_arr
    cdef int[::1] path = path_arr
    for k in range(n):
        stack[0, k] = s0[k]
    for depth in range(1, max_depth + 1):
        with nogil:
            found = _dfs(perms, inv, com, stack, tgt, path, 0, depth, -1)
        if found:
            return [int(v) for v in path_arr[:depth]]
    return None
