"""Principal-value quadrature on the circle and for the line Hilbert transform."""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import _quad
from .funcspace import Function1D

TAIL_POLICIES = ("ignore", "power")

# the difference-quotient panel ends here
DQ_SPLIT = 1.0


@dataclass(frozen=True)
class PVQuadratureConfig:
    """Quadrature parameters.

    ``n`` is the Gauss order per panel, ``R`` the truncation radius (``None``
    picks 1e3 for decaying and 1e4 for power-type integrands).  With
    ``tail_policy="power"`` the part beyond ``R`` is added as
    ``F(R) R / (beta - 1)`` for an integrand ``F ~ t**-beta``.
    """

    n: int = 24
    R: float | None = None
    tail_policy: str = "power"
    log_spacing: bool = True

    def __post_init__(self):
        if self.n < 8:
            raise ValueError("need at least 8 nodes per panel")
        if self.R is not None and not self.R > 0:
            raise ValueError("truncation radius must be positive")
        if self.tail_policy not in TAIL_POLICIES:
            raise ValueError(f"tail_policy must be one of {TAIL_POLICIES}")

    def radius(self, f: Function1D | None = None) -> float:
        if self.R is not None:
            return float(self.R)
        return 1e4 if f is not None and f.kind == "power" else 1e3

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "PVQuadratureConfig":
        d = dict(d)
        if "N" in d:
            d["n"] = d.pop("N")
        kw = {}
        if "n" in d:
            kw["n"] = int(d["n"])
        if d.get("R") not in (None, "", "None"):
            kw["R"] = float(d["R"])
        if "tail_policy" in d:
            kw["tail_policy"] = str(d["tail_policy"])
        if "log_spacing" in d:
            v = d["log_spacing"]
            kw["log_spacing"] = v if isinstance(v, bool) else str(v).lower() in ("1", "true", "yes")
        return cls(**kw)


DEFAULT_CONFIG = PVQuadratureConfig()


def _tail_exponent(f: Function1D) -> float | None:
    if f.kind == "power":
        return f.power
    if f.kind == "decaying":
        return f.decay
    return None


# ----------------------------------------------------------------------------
# circle
# ----------------------------------------------------------------------------

def pv_circle(F: Callable[[np.ndarray], np.ndarray], N: int):
    """PV integral over [-pi, pi] with poles allowed at 0 and +-pi.

    Midpoint rule on the half-offset grid, summed in pairs ``F(t) + F(-t)``
    so that the odd part of ``F`` cancels exactly; pairing ``t`` with ``-t``
    also pairs ``pi - u`` with ``-pi + u``, which is the single coupled limit
    at both singularities.  ``F`` may broadcast: the node axis is the last.
    """
    if N % 2 or N < 8:
        raise ValueError("pv_circle needs an even N >= 8")
    h = 2.0 * math.pi / N
    t = (np.arange(N // 2) + 0.5) * h
    return np.sum(F(t) + F(-t), axis=-1) * h


# ----------------------------------------------------------------------------
# line Hilbert transform
# ----------------------------------------------------------------------------

def _hilbert_rule(g: Function1D, x: float, R: float, cfg: PVQuadratureConfig):
    """Nodes/weights on (0, R_eff] for the odd-reflection integrand at x."""
    t_hi = R
    if g.kind == "compact":
        a, b = g.interval
        t_hi = min(R, max(abs(x - a), abs(x - b)))
    brk = {DQ_SPLIT}
    brk.update(abs(x - p) for p in g.breakpoints)
    if g.interval is not None:
        brk.update(abs(x - p) for p in g.interval)
    sing = {abs(x - s) for s in g.singular_points}
    sing.discard(0.0)
    # power-type blow-up |t - |x - s||**-power is integrated by Gauss-Jacobi
    exps = {p: g.power for p in sing} if g.kind == "power" else None
    grade_zero = any(x == p for p in g.breakpoints)
    if grade_zero:
        sing.add(0.0)
    return _quad.composite_rule(0.0, t_hi, brk, sing, cfg.n, cfg.log_spacing,
                                exponents=exps), t_hi


def _hilbert_one(g: Function1D, x: float, cfg: PVQuadratureConfig) -> complex | float:
    # truncation measured from the evaluation point's own scale
    R = cfg.radius(g) * max(1.0, abs(x))
    if g.kind == "power" and any(x == s for s in g.singular_points):
        warnings.warn("Hilbert transform evaluated at a singularity of a power-type "
                      "function; a symmetric neighborhood is excluded", RuntimeWarning)
        delta = 1e-8
    else:
        delta = 0.0
    (t, w), t_hi = _hilbert_rule(g, x, R, cfg)
    if delta:
        keep = t > delta
        t, w = t[keep], w[keep]
    F = (g(x - t) - g(x + t)) / t
    val = np.sum(w * F)
    if cfg.tail_policy == "power" and t_hi == R and g.kind != "compact":
        beta = _tail_exponent(g)
        if beta is None or not beta > 0:
            raise ValueError("power tail extrapolation needs a tail exponent > 0")
        if math.isfinite(beta):
            FR = (g(np.array([x - R])) - g(np.array([x + R])))[0] / R
            val = val + FR * R / beta
    return val / math.pi


def pv_line_hilbert(g: Function1D, x, cfg: PVQuadratureConfig = DEFAULT_CONFIG):
    """``(1/pi) PV int g(y) / (x - y) dy`` via ``(1/pi) int_0^inf (g(x-t) - g(x+t)) / t dt``.

    ``x`` may be a scalar or an array.  The t-range is split at 1 (the
    difference-quotient panel), at every ``|x - b|`` for breakpoints ``b`` of
    ``g`` and graded toward ``|x - s|`` for its singular points.
    """
    if g.kind == "periodic":
        raise ValueError("use the circle operators for periodic functions")
    xs = np.asarray(x, dtype=float)
    out = np.array([_hilbert_one(g, float(xi), cfg) for xi in xs.ravel()])
    return out.reshape(xs.shape) if xs.ndim else out[0]


def hilbert_values(g: Function1D, x, cfg: PVQuadratureConfig = DEFAULT_CONFIG,
                   analytic: bool = True):
    """Closed form when the descriptor carries one, else :func:`pv_line_hilbert`."""
    if analytic and g.hilbert is not None:
        return g.hilbert(np.asarray(x, dtype=float))
    return pv_line_hilbert(g, x, cfg)


# ----------------------------------------------------------------------------
# plain integrals
# ----------------------------------------------------------------------------

def integrate_halfline(phi: Function1D, cfg: PVQuadratureConfig = DEFAULT_CONFIG):
    """``int_0^inf phi``; returns ``known_integral`` verbatim when present."""
    on_halfline = phi.halfline or (phi.kind == "compact" and phi.interval[0] >= 0)
    if phi.known_integral is not None and on_halfline:
        return phi.known_integral
    return integrate(phi, 0.0, math.inf, cfg)


def integrate(f: Function1D, a: float, b: float, cfg: PVQuadratureConfig = DEFAULT_CONFIG,
              breakpoints=(), singular=(), beta: float | None = None, func=None,
              exponents=None):
    """``int_a^b func`` where ``func`` defaults to ``f``; infinite limits are
    truncated at ``R`` with the configured tail policy.

    ``f`` supplies support and breakpoint metadata; ``beta`` overrides its
    tail exponent (needed when ``func`` is a product that decays faster).
    ``exponents`` maps singular points to known blow-up exponents.
    """
    func = f if func is None else func
    R = cfg.radius(f)
    lo, hi = a, b
    if f.halfline:
        lo = max(lo, 0.0)
    if f.kind == "compact":
        lo, hi = max(lo, f.interval[0]), min(hi, f.interval[1])
        if not hi > lo:
            return 0.0
    if f.kind == "power" and beta is None:
        raise ValueError("power-type functions are not integrable on unbounded sets")
    lo_t, hi_t = max(lo, -R), min(hi, R)
    brk = set(breakpoints) | set(f.breakpoints) | {p for p in (-1.0, 0.0, 1.0)}
    sing = set(singular) | set(f.singular_points)
    x, w = _quad.composite_rule(lo_t, hi_t, brk, sing, cfg.n, cfg.log_spacing,
                                exponents=exponents)
    val = np.sum(w * func(x)) if x.size else 0.0
    beta = _tail_exponent(f) if beta is None else beta
    truncated = [e for e, cut in ((hi_t, hi > R), (lo_t, lo < -R)) if cut]
    if truncated:
        if beta is not None and beta <= 1.0 and cfg.tail_policy == "ignore":
            warnings.warn("integrand decays too slowly for the ignore tail policy",
                          RuntimeWarning)
        if cfg.tail_policy == "power":
            if beta is None:
                raise ValueError("power tail extrapolation needs a tail exponent")
            if beta <= 1.0:
                raise ValueError("divergent tail: decay exponent must exceed 1")
            if math.isfinite(beta):
                for e in truncated:
                    val = val + func(np.array([e]))[0] * abs(e) / (beta - 1.0)
    return val
