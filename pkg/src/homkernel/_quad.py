"""Composite Gauss-Legendre rules on graded and log-spaced panels.

Shared low-level machinery; every integral over a finite interval in the
package goes through :func:`composite_rule`.
"""
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

# geometric grading toward integrable point singularities
GRADE_RATIO = 0.15
GRADE_LEVELS = 20
# smallest graded panel relative to the singular point's magnitude
GAUSS_FLOOR = 1e4 * np.finfo(float).eps
JACOBI_FLOOR = 1e-6


@lru_cache(maxsize=None)
def gauss_legendre(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=None)
def gauss_jacobi(n, alpha, beta):
    x, w = roots_jacobi(n, alpha, beta)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _end_rule(l, r, n, exponent, at_left):
    """Gauss-Jacobi weights for ``F ~ |u - end|**-exponent`` at one end of
    [l, r], rescaled so that ``sum(w * F(x))`` approximates ``int F``."""
    if at_left:
        x, w = gauss_jacobi(n, 0.0, -exponent)
        w = w * (1.0 + x) ** exponent
    else:
        x, w = gauss_jacobi(n, -exponent, 0.0)
        w = w * (1.0 - x) ** exponent
    half = 0.5 * (r - l)
    return l + half * (x + 1.0), half * w


def panel_rule(edges, n):
    """Nodes and weights of an n-point Gauss rule on every panel of ``edges``."""
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(n)
    lo = edges[:-1, None]
    half = 0.5 * np.diff(edges)[:, None]
    nodes = lo + half * (x[None, :] + 1.0)
    weights = half * w[None, :]
    return nodes.ravel(), weights.ravel()


def _graded(l, r, at_left, at_right, ratio, levels, floor_left=None, floor_right=None):
    floor_left = GAUSS_FLOOR if floor_left is None else floor_left
    floor_right = GAUSS_FLOOR if floor_right is None else floor_right
    if not (at_left or at_right):
        return [l, r]
    if at_left and at_right:
        mid = 0.5 * (l + r)
        return _graded(l, mid, True, False, ratio, levels, floor_left)[:-1] + \
            _graded(mid, r, False, True, ratio, levels, floor_right=floor_right)
    length = r - l
    offsets = length * ratio ** np.arange(levels, 0, -1)
    # Gauss nodes inside finer panels would round onto the singular point
    rel = floor_left if at_left else floor_right
    offsets = offsets[offsets > rel * max(abs(l), abs(r))]
    if at_left:
        return [l] + list(l + offsets) + [r]
    return [l] + list(r - offsets[::-1]) + [r]


def _log_split(l, r):
    """Split [l, r] into panels whose length grows geometrically away from 0."""
    if l >= 0.0:
        if l == 0.0 or r / l <= 2.0:
            return [l, r]
        k = int(np.floor(np.log2(r / l)))
        inner = list(l * 2.0 ** np.arange(1, k + 1))
        if inner and r - inner[-1] < 0.25 * (inner[-1] - l):
            inner.pop()
        return [l] + [e for e in inner if e < r] + [r]
    if r <= 0.0:
        return [-e for e in _log_split(-r, -l)[::-1]]
    return _log_split(l, 0.0)[:-1] + _log_split(0.0, r)


def composite_rule(a, b, breakpoints=(), singular=(), n=24, log_spacing=True,
                   ratio=GRADE_RATIO, levels=GRADE_LEVELS, exponents=None):
    """Composite Gauss rule on [a, b].

    Panels are split at ``breakpoints`` and ``singular`` points; panels that
    touch a singular point are geometrically graded toward it.  With
    ``log_spacing`` long panels are split into octaves about the origin.
    ``exponents`` maps singular points to a known blow-up exponent ``s`` of
    the integrand (``|u - p|**-s``); the panels ending there use Gauss-Jacobi.
    """
    if not b > a:
        return np.empty(0), np.empty(0)
    sing = {float(s) for s in singular if a <= s <= b}
    pts = sorted({a, b} | {float(p) for p in breakpoints if a < p < b} |
                 {s for s in sing if a < s < b})
    exponents = {float(p): e for p, e in (exponents or {}).items() if e}

    def near(p, length):
        # a breakpoint hugging a singular point shields it from grading
        return p in sing or any(0 < abs(p - s) < 0.05 * length for s in sing)

    def floor(p):
        # with a known exponent the innermost panel is Gauss-Jacobi, so grading
        # stops early, before u - p loses relative precision at its nodes
        return JACOBI_FLOOR if p in exponents else GAUSS_FLOOR

    edges = [a]
    for l, r in zip(pts[:-1], pts[1:]):
        sub = _log_split(l, r) if log_spacing else [l, r]
        for sl, sr in zip(sub[:-1], sub[1:]):
            edges.extend(_graded(sl, sr, near(sl, sr - sl), near(sr, sr - sl), ratio,
                                 levels, floor(sl), floor(sr))[1:])
    edges = np.asarray(edges)
    x, w = panel_rule(edges, n)
    if exponents:
        x, w = x.reshape(-1, n), w.reshape(-1, n)
        for p, e in exponents.items():
            if not a <= p <= b:
                continue
            for i in np.flatnonzero(edges[:-1] == p):
                x[i], w[i] = _end_rule(edges[i], edges[i + 1], n, e, True)
            for i in np.flatnonzero(edges[1:] == p):
                x[i], w[i] = _end_rule(edges[i], edges[i + 1], n, e, False)
        x, w = x.ravel(), w.ravel()
    return x, w


def van_der_corput(n, base=2):
    """First ``n`` points of the base-``base`` van der Corput sequence in [0, 1)."""
    out = np.zeros(n)
    for i in range(n):
        q, denom, k = 0.0, 1.0, i
        while k:
            k, rem = divmod(k, base)
            denom *= base
            q += rem / denom
        out[i] = q
    return out
