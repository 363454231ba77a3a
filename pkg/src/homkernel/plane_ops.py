"""The planar operator K in its tensor, Stepanov-type and Hilbert-Radon forms.

    (K f)(x) = (1/pi) PV int int f(y) / (x1 y2 - x2 y1) dy

All evaluators sample K f off the coordinate axes only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .circle_ops import calK_direct
from .funcspace import Function1D, Function2D, TensorSum2D
from .pvquad import DEFAULT_CONFIG, PVQuadratureConfig, hilbert_values, integrate


@dataclass(frozen=True)
class PlanePoint:
    x1: float
    x2: float

    def __iter__(self):
        return iter((self.x1, self.x2))

    def scaled(self, lam: float) -> "PlanePoint":
        return PlanePoint(lam * self.x1, lam * self.x2)


@dataclass(frozen=True)
class GL2Plus:
    """Orientation-preserving 2x2 matrix ``[[a, b], [c, d]]``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not self.det > 0:
            raise ValueError("GL+(2) elements need a positive determinant")

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return x @ self.matrix.T


def _point(x) -> PlanePoint:
    if isinstance(x, PlanePoint):
        return x
    x1, x2 = x
    return PlanePoint(float(x1), float(x2))


def kernel_eval(x, y):
    """``1 / (pi (x1 y2 - x2 y1))``; ``x``, ``y`` broadcast over leading axes."""
    x = np.asarray(tuple(x) if isinstance(x, PlanePoint) else x, dtype=float)
    y = np.asarray(tuple(y) if isinstance(y, PlanePoint) else y, dtype=float)
    cross = x[..., 0] * y[..., 1] - x[..., 1] * y[..., 0]
    if np.any(cross == 0):
        raise ZeroDivisionError("kernel is singular for collinear x and y")
    return 1.0 / (math.pi * cross)


def _terms(f) -> tuple[tuple[Function1D, Function1D], ...]:
    if isinstance(f, TensorSum2D):
        return f.terms
    raise TypeError("this representation needs a TensorSum2D")


def _require_off_axes(x: PlanePoint, what: str):
    if x.x1 == 0:
        raise ValueError(f"{what} divides by x1: sample off the x2-axis")
    if x.x2 == 0:
        raise ValueError(f"{what} is not defined on the x1-axis")


def _tail(*fs: Function1D, extra: float = 0.0) -> float | None:
    total = extra
    for f in fs:
        if f.kind == "compact":
            return math.inf
        if f.kind == "decaying":
            total += f.decay
        elif f.kind == "power":
            total += f.power
    return total


def _masked(f1_vals, compute, y):
    """Evaluate ``f1_vals * compute(y)`` only where ``f1_vals`` is nonzero."""
    out = np.zeros(y.shape, dtype=np.result_type(f1_vals, float))
    nz = f1_vals != 0
    if np.any(nz):
        out[nz] = f1_vals[nz] * compute(y[nz])
    return out


# ----------------------------------------------------------------------------
# tensor (est1) form
# ----------------------------------------------------------------------------

def k_apply_est1(f: TensorSum2D, x, cfg: PVQuadratureConfig = DEFAULT_CONFIG,
                 analytic_hilbert: bool = True) -> float:
    """``-(1/x1) sum_i int f_i(y1) (H g_i)(x2 y1 / x1) dy1``.

    ``H`` is the line Hilbert transform; closed forms carried by the
    descriptors are used unless ``analytic_hilbert`` is off.
    """
    x = _point(x)
    _require_off_axes(x, "the tensor representation")
    ratio = x.x2 / x.x1
    total = 0.0
    for f1, f2 in _terms(f):
        if f1.kind in ("power", "periodic"):
            raise ValueError("first tensor factor must be compact or decaying")

        def F(y, f1=f1, f2=f2):
            return _masked(f1(y), lambda z: hilbert_values(f2, ratio * z, cfg,
                                                           analytic_hilbert), y)

        # H g decays like 1/|y| (|y|**-s for power type)
        beta = _tail(f1, extra=f2.power if f2.kind == "power" else 1.0)
        brk = [b / ratio for b in f2.breakpoints]
        if f2.interval is not None:
            brk += [b / ratio for b in f2.interval]
        sing = [s / ratio for s in f2.singular_points]
        # power type: H f2 blows up like |z - s|**-power at its singular points
        exps = {p: f2.power for p in sing} if f2.kind == "power" else None
        total += integrate(f1, -math.inf, math.inf, cfg, brk, sing, beta=beta, func=F,
                           exponents=exps)
    return -total / x.x1


# ----------------------------------------------------------------------------
# Stepanov form
# ----------------------------------------------------------------------------

def _slice_descriptor(func: Callable, decay: float) -> Function1D:
    return Function1D(func=func, kind="decaying", decay=decay,
                      breakpoints=(-1.0, 0.0, 1.0))


def k_apply_stepanov(f, x, cfg: PVQuadratureConfig = DEFAULT_CONFIG) -> float:
    """``sgn(x1 x2) int dt2 (1/pi) PV int f(x1 t1, x2 t2) / (t2 - t1) dt1``.

    The inner PV integral is the line Hilbert transform in ``t1`` evaluated
    at ``t2``.  The sign factor comes from ``dy = |x1 x2| dt``.
    """
    x = _point(x)
    _require_off_axes(x, "the Stepanov representation")
    sign = math.copysign(1.0, x.x1 * x.x2)
    if isinstance(f, TensorSum2D):
        total = 0.0
        for f1, f2 in f.terms:
            g1 = f1.affine(x.x1)
            g2 = f2.affine(x.x2)
            F = lambda t, g1=g1, g2=g2: _masked(g2(t), lambda z: hilbert_values(g1, z, cfg), t)
            brk = list(g1.breakpoints)
            # H of a jump has a log singularity at the jump
            sing = list(g1.singular_points) + list(g1.interval or ())
            beta = _tail(g2, extra=1.0)
            total += integrate(g2, -math.inf, math.inf, cfg, brk, sing, beta=beta, func=F)
        return sign * total
    if isinstance(f, Function2D):
        def F(t2):
            out = np.empty(t2.shape)
            for i, s in enumerate(t2.ravel()):
                h = _slice_descriptor(lambda t1, s=s: f(x.x1 * t1, x.x2 * s), f.decay)
                out.flat[i] = hilbert_values(h, s, cfg)
            return out
        outer = _slice_descriptor(lambda t: t, f.decay + 1.0)
        return sign * integrate(outer, -math.inf, math.inf, cfg, func=F)
    raise TypeError("f must be a TensorSum2D or Function2D")


# ----------------------------------------------------------------------------
# Radon slices and the Hilbert-Radon form
# ----------------------------------------------------------------------------

def _slice_integral(f, xi: float, weight, cfg: PVQuadratureConfig) -> float:
    """``int weight(eta) f(eta, xi eta) d eta``."""
    if isinstance(f, TensorSum2D):
        total = 0.0
        for f1, f2 in f.terms:
            brk, sing = [0.0], list(f1.singular_points)
            if xi != 0.0:
                brk += [b / xi for b in f2.breakpoints]
                brk += [b / xi for b in (f2.interval or ())]
                sing += [s / xi for s in f2.singular_points]
            func = lambda e, f1=f1, f2=f2: weight(e) * f1(e) * f2(xi * e)
            if f2.kind == "compact" and xi != 0.0 and f1.kind != "compact":
                # f2(xi eta) vanishes outside a bounded eta-range
                lo, hi = sorted(b / xi for b in f2.interval)
                carrier = Function1D(func=func, kind="compact", interval=(lo, hi))
                val = integrate(carrier, lo, hi, cfg, brk, sing, func=func)
            else:
                beta = _tail(f1, f2) if xi != 0.0 else _tail(f1)
                val = integrate(f1, -math.inf, math.inf, cfg, brk, sing, beta=beta,
                                func=func)
            total += val
        return total
    if isinstance(f, Function2D):
        g = Function1D(func=lambda e: weight(e) * f(e, xi * e), kind="decaying",
                       decay=max(f.decay, 1.5))
        return integrate(g, -math.inf, math.inf, cfg, (-1.0, 0.0, 1.0), (0.0,))
    raise TypeError("f must be a TensorSum2D or Function2D")


def radon_slice(f, xi, cfg: PVQuadratureConfig = DEFAULT_CONFIG, measure: str = "parameter"):
    """Integral of ``f`` along the line ``y2 = xi y1`` through the origin.

    ``measure="parameter"`` gives ``int f(eta, xi eta) d eta``;
    ``measure="length"`` multiplies by ``sqrt(1 + xi**2)`` (arc length).
    """
    xis = np.asarray(xi, dtype=float)
    vals = np.array([_slice_integral(f, float(s), np.ones_like, cfg) for s in xis.ravel()])
    if measure == "length":
        vals = vals * np.sqrt(1.0 + xis.ravel() ** 2)
    elif measure != "parameter":
        raise ValueError("measure must be 'parameter' or 'length'")
    vals = vals.reshape(xis.shape)
    return vals if xis.ndim else float(vals)


def signed_radon_slice(f, xi, cfg: PVQuadratureConfig = DEFAULT_CONFIG):
    """``int sgn(eta) f(eta, xi eta) d eta``: the two half-lines with opposite signs."""
    xis = np.asarray(xi, dtype=float)
    vals = np.array([_slice_integral(f, float(s), np.sign, cfg) for s in xis.ravel()])
    vals = vals.reshape(xis.shape)
    return vals if xis.ndim else float(vals)


def k_apply_radon(f, x, cfg: PVQuadratureConfig = DEFAULT_CONFIG) -> float:
    """``-(1/x1) H[S](x2 / x1)`` with ``S`` the signed slice profile.

    Substituting ``y = (eta, xi eta)`` gives ``dy = |eta| d eta d xi`` and
    ``x1 y2 - x2 y1 = eta (x1 xi - x2)``, so the slice weight is ``sgn(eta)``.
    ``S(xi) ~ c / xi`` at infinity, hence tail exponent 1.
    """
    x = _point(x)
    _require_off_axes(x, "the Hilbert-Radon representation")
    S = Function1D(func=lambda s: signed_radon_slice(f, s, cfg), kind="decaying",
                   decay=1.0, breakpoints=(-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0))
    return -float(hilbert_values(S, x.x2 / x.x1, cfg)) / x.x1


# ----------------------------------------------------------------------------
# polar lift and intertwining
# ----------------------------------------------------------------------------

def polar_lift(f) -> Callable:
    """``(S f)(rho, theta) = f(rho cos theta, rho sin theta)``."""
    def lifted(rho, theta):
        rho = np.asarray(rho, dtype=float)
        theta = np.asarray(theta, dtype=float)
        return f(rho * np.cos(theta), rho * np.sin(theta))
    return lifted


def intertwining_residual(f, samples: Iterable[tuple[float, float]],
                          cfg: PVQuadratureConfig = DEFAULT_CONFIG, n_angle: int = 512,
                          rho_max: float | None = None, cartesian=None,
                          delta: float = 1e-12) -> float:
    """``max |S(Kf) - K_polar(S f)| / (|K_polar(S f)| + delta)`` over polar samples.

    The Cartesian side uses :func:`k_apply_est1` (or ``cartesian``), the
    polar side integrates the polar kernel directly on the lifted function.
    """
    cart = cartesian or (lambda x: k_apply_est1(f, x, cfg))
    lifted = polar_lift(f)
    worst = 0.0
    for rho, theta in samples:
        lhs = cart(PlanePoint(rho * math.cos(theta), rho * math.sin(theta)))
        rhs = calK_direct(lifted, rho, theta, cfg, n_angle, rho_max)
        worst = max(worst, abs(lhs - rhs) / (abs(rhs) + delta))
    return float(worst)
