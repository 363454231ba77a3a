"""Constants, weights and inequality checkers for the norm bounds.

Every check produces a :class:`BoundReport`; a report passes iff
``lhs <= rhs * slack_factor``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import circle_ops
from .funcspace import (CircleFunction, Function1D, HolderWitness, PolarTensorSum,
                        TensorSum2D, indicator, power)
from .plane_ops import PlanePoint, _point, k_apply_est1
from .pvquad import DEFAULT_CONFIG, PVQuadratureConfig, integrate

QUADRATURE_SLACK = 1.0 + 1e-2
# the grid seminorm is a lower estimate of the true one
GRID_SLACK = 1.05
EVEN_TOL = 1e-10

CSV_FIELDS = ("name", "lhs", "rhs", "slack", "verdict", "context")


@dataclass
class BoundReport:
    name: str
    lhs: float
    rhs: float
    slack_factor: float = 1.0
    context: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if self.lhs <= self.rhs * self.slack_factor else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def ratio(self) -> float:
        if self.rhs == 0:
            return 0.0 if self.lhs == 0 else math.inf
        return self.lhs / self.rhs

    def to_dict(self) -> dict:
        d = {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
             "slack_factor": self.slack_factor, "context": dict(self.context)}
        d["verdict"] = self.verdict
        # JSON has no infinity: an unasserted report carries a null slack
        if not math.isfinite(d["slack_factor"]):
            d["slack_factor"] = None
        return d

    def csv_row(self) -> list:
        return [self.name, repr(float(self.lhs)), repr(float(self.rhs)),
                repr(float(self.slack_factor)), self.verdict,
                json.dumps(self.context, sort_keys=True, default=_jsonable)]


def _jsonable(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, PlanePoint):
        return [o.x1, o.x2]
    return str(o)


def reports_to_json(reports: Sequence[BoundReport], **meta) -> str:
    doc = dict(meta)
    doc["reports"] = [r.to_dict() for r in reports]
    return json.dumps(doc, sort_keys=True, indent=2, default=_jsonable)


def reports_to_csv(reports: Sequence[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


# ----------------------------------------------------------------------------
# constants and weights
# ----------------------------------------------------------------------------

def conjugate_exponent(p: float) -> float:
    if not 1.0 < p < math.inf:
        raise ValueError(f"exponent must satisfy 1 < p < inf, got {p}")
    return p / (p - 1.0)


def riesz_constant(p: float) -> float:
    """Norm of the line Hilbert transform on L^p."""
    if not 1.0 < p < math.inf:
        raise ValueError(f"Riesz constant needs 1 < p < inf, got {p}")
    if p == 2.0:
        return 1.0
    a = math.pi / (2.0 * p)
    return math.tan(a) if p <= 2.0 else 1.0 / math.tan(a)


def v_p_weight(x, p: float) -> float:
    """``|x1|**(-1/q) |x2|**(-1/p)``."""
    x = _point(x)
    if x.x1 == 0 or x.x2 == 0:
        raise ValueError("the weight is singular on the coordinate axes")
    q = conjugate_exponent(p)
    return abs(x.x1) ** (-1.0 / q) * abs(x.x2) ** (-1.0 / p)


def c_gamma(gamma: float, hilbert_holder_norm: float) -> float:
    """``1/(gamma pi**(1-gamma)) + ||H||_{Lambda_gamma} (2 pi)**gamma``.

    The Hoelder norm of the conjugate-function operator has no known closed
    value, so it is always a caller-supplied parameter.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    if hilbert_holder_norm < 0:
        raise ValueError("operator norm parameter must be nonnegative")
    return math.pi ** (gamma - 1.0) / gamma + hilbert_holder_norm * (2.0 * math.pi) ** gamma


# ----------------------------------------------------------------------------
# plane bounds
# ----------------------------------------------------------------------------

def check_est3(f: TensorSum2D, points: Iterable, p: float = 2.0,
               cfg: PVQuadratureConfig = DEFAULT_CONFIG,
               slack: float = QUADRATURE_SLACK) -> list[BoundReport]:
    """Pointwise Riesz-type bound against ``C_p v_p(x) ||f||``.

    The norm is the representation proxy ``sum ||f_i||_q ||g_i||_p``, which
    can only overestimate the projective norm.
    """
    q = conjugate_exponent(p)
    if (f.q, f.p) != (q, p):
        f = TensorSum2D(f.terms, q, p, f.bound)
    norm = f.projective_bound
    C = riesz_constant(p)
    out = []
    for x in points:
        x = _point(x)
        lhs = abs(k_apply_est1(f, x, cfg))
        rhs = C * v_p_weight(x, p) * norm
        out.append(BoundReport("est3", float(lhs), float(rhs), slack,
                               {"p": p, "point": [x.x1, x.x2], "norm": norm}))
    return out


def sharpness_input(p: float = 2.0) -> TensorSum2D:
    """``indicator(0,1) (x) sgn(t)|t|**(-1/q)``, the extremal input.

    Its image is ``p tan(pi/2p) x1**-1 |x1|**(1/q) |x2|**(-1/q)``.
    """
    q = conjugate_exponent(p)
    return TensorSum2D([(indicator(0.0, 1.0), power(1.0 / q))], q, p)


def sharpness_closed_form(x, p: float = 2.0) -> float:
    x = _point(x)
    q = conjugate_exponent(p)
    return p * math.tan(math.pi / (2 * p)) / x.x1 * abs(x.x1) ** (1 / q) * abs(x.x2) ** (-1 / q)


def sharpness_profile(x2_values: Iterable[float], p: float = 2.0, x1: float = 1.0,
                      cfg: PVQuadratureConfig = DEFAULT_CONFIG,
                      analytic_hilbert: bool = False) -> list[BoundReport]:
    """Ratio ``|Kf(x)| / (C_p v_p(x))`` for the extremal input.

    ``||f_2||_p`` is infinite on the whole line, so the comparison is with the
    weight shape itself.  The image is ``|x1|**(-1/p) |x2|**(-1/q)`` shaped,
    which is ``v_p`` only at p = 2; otherwise the ratio varies like
    ``|x2|**(1/p - 1/q)``.  Reports carry ``rhs = C_p v_p(x)`` and slack inf.
    """
    f = sharpness_input(p)
    C = riesz_constant(p)
    out = []
    for x2 in x2_values:
        x = PlanePoint(x1, float(x2))
        val = k_apply_est1(f, x, cfg, analytic_hilbert)
        out.append(BoundReport("sharpness", abs(float(val)), C * v_p_weight(x, p), math.inf,
                               {"p": p, "point": [x.x1, x.x2],
                                "closed_form": sharpness_closed_form(x, p),
                                "value": float(val)}))
    return out


# ----------------------------------------------------------------------------
# circle bounds
# ----------------------------------------------------------------------------

def _radial_l1(a: Function1D, cfg: PVQuadratureConfig) -> float:
    on_halfline = a.halfline or (a.kind == "compact" and a.interval[0] >= 0)
    if on_halfline and 1.0 in a.known_norms:
        return float(a.known_norms[1.0])
    carrier = Function1D(func=lambda t: np.abs(a(t)), kind=a.kind, interval=a.interval,
                         decay=a.decay, breakpoints=a.breakpoints,
                         singular_points=a.singular_points, halfline=True)
    return float(integrate(carrier, 0.0, math.inf, cfg))


def _angular_l2(b) -> float:
    if isinstance(b, CircleFunction):
        return float(np.sqrt(np.sum(np.abs(b.values) ** 2) * 2 * math.pi / b.N))
    return b.norm(2.0)


def check_k2_bound(phi: PolarTensorSum, alphas, N: int = 2048, backend: str = "quadrature",
                   cfg: PVQuadratureConfig = DEFAULT_CONFIG,
                   slack: float = QUADRATURE_SLACK) -> BoundReport:
    """``max |K2 phi| <= 2 sum ||a_i||_1 ||b_i||_2`` in the sup-norm lattice."""
    vals = circle_ops.k2_apply(phi, alphas, N, backend, cfg)
    lhs = float(np.max(np.abs(vals))) if np.size(vals) else 0.0
    rhs = 2.0 * sum(_radial_l1(a, cfg) * _angular_l2(b) for a, b in phi.terms)
    return BoundReport("k2", lhs, float(rhs), slack,
                       {"N": N, "backend": backend, "n_alpha": int(np.size(alphas)),
                        "terms": [[a.name, getattr(b, "name", "samples")]
                                  for a, b in phi.terms]})


def check_j_bound(phi, witness: HolderWitness, alphas, N: int = 2048) -> BoundReport:
    """``max |J phi| <= seminorm / (gamma pi**(1-gamma))``."""
    vals = circle_ops.j_apply(phi, witness, alphas=alphas, N=N)
    lhs = float(np.max(np.abs(vals)))
    g = witness.gamma
    rhs = witness.seminorm * math.pi ** (g - 1.0) / g
    slack = GRID_SLACK if witness.provenance == "grid-estimated" else QUADRATURE_SLACK
    return BoundReport("j", lhs, rhs, slack,
                       {"gamma": g, "seminorm": witness.seminorm,
                        "provenance": witness.provenance,
                        "function": getattr(phi, "name", "custom")})


def is_even(phi, n: int = 512, tol: float = EVEN_TOL) -> bool:
    t = np.linspace(0.0, math.pi, n)
    return float(np.max(np.abs(phi(t) - phi(-t)))) <= tol


def check_k1_even_holder(phi, witness: HolderWitness, alphas,
                         hilbert_holder_norm: float | None = None,
                         N: int = 2048) -> BoundReport:
    """``max |K1 phi| <= c_gamma ||phi||_{Lambda_gamma}`` for even ``phi``.

    Without a norm parameter only the report is produced: its rhs uses the
    J-part alone and the slack is infinite, so it is never asserted.
    """
    if not is_even(phi):
        raise ValueError("the even-Hoelder bound needs an even function")
    vals = circle_ops.k1_apply(phi, N, alphas=alphas)
    lhs = float(np.max(np.abs(vals)))
    norm = 0.0 if hilbert_holder_norm is None else hilbert_holder_norm
    rhs = c_gamma(witness.gamma, norm) * witness.seminorm
    if hilbert_holder_norm is None:
        slack = math.inf
    else:
        slack = GRID_SLACK if witness.provenance == "grid-estimated" else QUADRATURE_SLACK
    return BoundReport("k1-holder", lhs, rhs, slack,
                       {"gamma": witness.gamma, "seminorm": witness.seminorm,
                        "hilbert_holder_norm": hilbert_holder_norm,
                        "asserted": hilbert_holder_norm is not None})


def riesz_table(ps: Iterable[float]) -> list[tuple[float, float]]:
    return [(float(p), riesz_constant(p)) for p in ps]
