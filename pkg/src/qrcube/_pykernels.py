"""Pure-Python implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable, or when
``QRCUBE_PURE_PYTHON=1`` is set. Signatures and numerics match the
extension exactly; ``tests/test_backends.py`` holds the two to parity.
"""
import cmath
import math

from .errors import ConvergenceError

NAME = "python"

# orbital ids; order is the storage order used by stark
ORBITALS = ("1s", "2s", "2pz", "2px", "2py")


def poly_roots(coeffs, maxiter=200, tol=1e-13):
    """Aberth-Ehrlich simultaneous iteration on a monic polynomial.

    ``coeffs`` are highest degree first with ``coeffs[0] == 1``. Returns
    ``(roots, converged, iterations, max_correction)``.
    """
    c = [complex(x) for x in coeffs]
    n = len(c) - 1
    if n <= 0:
        return [], True, 0, 0.0
    bound = 0.0
    for k in range(1, n + 1):
        bound = max(bound, abs(c[k]) ** (1.0 / k))
    radius = 2.0 * bound if bound > 0.0 else 1.0
    z = [radius * cmath.exp(1j * (2.0 * math.pi * k / n + 0.4)) for k in range(n)]
    maxcorr = math.inf
    for it in range(1, maxiter + 1):
        maxcorr = 0.0
        for k in range(n):
            zk = z[k]
            p = c[0]
            dp = 0j
            for a in c[1:]:
                dp = dp * zk + p
                p = p * zk + a
            if p == 0:
                continue
            if dp == 0:
                ratio = p
            else:
                ratio = p / dp
            s = 0j
            for j in range(n):
                if j != k:
                    d = zk - z[j]
                    if d != 0:
                        s += 1.0 / d
            den = 1.0 - ratio * s
            w = ratio / den if den != 0 else ratio
            z[k] = zk - w
            corr = abs(w) / (1.0 + abs(z[k]))
            if corr > maxcorr:
                maxcorr = corr
        if maxcorr <= tol:
            return z, True, it, maxcorr
    return z, False, maxiter, maxcorr


def _adaptive(f, a, b, eps, max_depth, min_depth, state):
    fa = f(a)
    fm = f(0.5 * (a + b))
    fb = f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _asr(f, a, b, eps, whole, fa, fm, fb, 0, max_depth, min_depth, state)


def _asr(f, a, b, eps, whole, fa, fm, fb, level, max_depth, min_depth, state):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if level >= min_depth and abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if level >= max_depth:
        state[0] = max(state[0], abs(delta))
        return left + right
    return (_asr(f, a, m, 0.5 * eps, left, fa, flm, fm, level + 1, max_depth, min_depth, state)
            + _asr(f, m, b, 0.5 * eps, right, fm, frm, fb, level + 1, max_depth, min_depth, state))


def triple_simpson(f, r_max, tol, max_depth=40, min_depth=3):
    """Nested adaptive Simpson of ``f(r, theta, phi)`` over the box
    ``[0, r_max] x [0, pi] x [0, 2 pi]`` (no Jacobian is applied).

    The tolerance is split so the inner errors integrate to at most
    ``tol / 2``.
    """
    tol_r = 0.5 * tol
    tol_t = tol / (4.0 * r_max)
    tol_p = tol / (4.0 * math.pi * r_max)
    state = [0.0]

    def over_r(r):
        def over_theta(t):
            return _adaptive(lambda p: f(r, t, p), 0.0, 2.0 * math.pi, tol_p,
                             max_depth, min_depth, state)
        return _adaptive(over_theta, 0.0, math.pi, tol_t, max_depth, min_depth, state)

    value = _adaptive(over_r, 0.0, r_max, tol_r, max_depth, min_depth, state)
    if state[0] > 0.0:
        raise ConvergenceError("adaptive Simpson hit its subdivision limit", state[0])
    return value


def orbital(oid, r, t, p, a):
    """Hydrogen n<=2 orbital ``oid`` at spherical point (r, t, p), Bohr radius ``a``."""
    x = r / a
    if oid == 0:
        return math.exp(-x) / math.sqrt(math.pi * a ** 3)
    norm = 1.0 / math.sqrt(32.0 * math.pi * a ** 3)
    e = math.exp(-0.5 * x)
    if oid == 1:
        return norm * (2.0 - x) * e
    if oid == 2:
        return norm * x * e * math.cos(t)
    if oid == 3:
        return norm * x * e * math.sin(t) * math.cos(p)
    if oid == 4:
        return norm * x * e * math.sin(t) * math.sin(p)
    raise ValueError(f"unknown orbital id {oid}")


def dipole_triple(n_id, m_id, a, r_max, tol, max_depth=40, min_depth=3):
    """``<n| r cos(theta) |m>`` for hydrogen orbitals with Bohr radius ``a``."""
    def f(r, t, p):
        return (orbital(n_id, r, t, p, a) * orbital(m_id, r, t, p, a)
                * r * math.cos(t) * r * r * math.sin(t))
    return triple_simpson(f, r_max, tol, max_depth, min_depth)


def ids_search(start, target, moves, inverse, commute, max_depth):
    """Iterative-deepening DFS over gather permutations.

    ``start``/``target`` are integer label arrays, ``moves[i]`` a gather
    permutation (``new = state[moves[i]]``), ``inverse[i]`` the index of
    the move undoing ``i`` (or -1), ``commute[i][j]`` true when moves
    ``i`` and ``j`` commute. Returns the lexicographically least shortest
    list of move indices, or ``None``.
    """
    start = tuple(int(v) for v in start)
    target = tuple(int(v) for v in target)
    if start == target:
        return []
    perms = [tuple(int(v) for v in m) for m in moves]
    inv = [int(v) for v in inverse]
    com = [[bool(v) for v in row] for row in commute]
    nmoves = len(perms)
    path = []

    def dfs(state, remaining, prev):
        for i in range(nmoves):
            if prev >= 0 and (inv[prev] == i or (i < prev and com[prev][i])):
                continue
            p = perms[i]
            nxt = tuple([state[k] for k in p])
            path.append(i)
            if remaining == 1:
                if nxt == target:
                    return True
            elif dfs(nxt, remaining - 1, i):
                return True
            path.pop()
        return False

    for depth in range(1, max_depth + 1):
        if dfs(start, depth, -1):
            return path
    return None
