"""Function descriptors, circle grids, Fourier spectra and tensor sums."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from . import _quad

SQRT_2PI = math.sqrt(2.0 * math.pi)

KINDS = ("compact", "decaying", "power", "periodic")


@dataclass(frozen=True, eq=False)
class Function1D:
    """A function of one real variable plus the metadata quadratures need.

    ``kind`` selects the support/decay class:

    * ``compact``: zero outside ``interval``;
    * ``decaying``: ``|f(t)| <= C |t|**-decay`` for large ``|t|``
      (``decay=inf`` for Gaussian-type decay);
    * ``power``: ``sgn(t) |t|**-power`` type, ``0 < power < 1``;
    * ``periodic``: 2*pi-periodic.

    ``breakpoints`` are points where panels should be split (kinks, jumps,
    scale marks); ``singular_points`` additionally get geometric grading.
    """

    func: Callable[[np.ndarray], np.ndarray]
    kind: str = "decaying"
    interval: tuple[float, float] | None = None
    decay: float | None = None
    power: float | None = None
    known_integral: float | None = None
    known_norms: Mapping[float, float] = field(default_factory=dict)
    breakpoints: tuple[float, ...] = ()
    singular_points: tuple[float, ...] = ()
    hilbert: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = "custom"
    params: tuple = ()
    # vanishes on (-inf, 0); known_integral is then also the half-line integral
    halfline: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown function kind {self.kind!r}")
        if self.kind == "compact":
            if self.interval is None or not self.interval[0] < self.interval[1]:
                raise ValueError("compact descriptor needs an interval a < b")
        if self.kind == "power" and not (self.power is not None and 0.0 < self.power < 1.0):
            raise ValueError("power-type descriptor needs exponent s in (0, 1)")
        if self.kind == "decaying" and not (self.decay is not None and self.decay > 0):
            raise ValueError("decaying descriptor needs a tail exponent > 0")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            v = self.func(t)
        if self.kind == "compact":
            a, b = self.interval
            v = np.where((t >= a) & (t <= b), v, 0.0)
        return v

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self(np.zeros(1)))

    def affine(self, scale: float, shift: float = 0.0) -> "Function1D":
        """Descriptor of ``t -> f(scale * t + shift)``."""
        if scale == 0.0:
            raise ValueError("scale must be nonzero")
        if self.kind == "periodic":
            raise ValueError("affine maps of periodic descriptors are not supported")
        inv = lambda p: (p - shift) / scale
        interval = None
        if self.interval is not None:
            lo, hi = sorted((inv(self.interval[0]), inv(self.interval[1])))
            interval = (lo, hi)
        hilbert = None
        if self.hilbert is not None:
            # H[f(a t + b)](x) = sgn(a) (Hf)(a x + b)
            sg = math.copysign(1.0, scale)
            h = self.hilbert
            hilbert = lambda x: sg * h(scale * np.asarray(x, dtype=float) + shift)
        integral = None
        if self.known_integral is not None:
            integral = self.known_integral / abs(scale)
        norms = {p: v / abs(scale) ** (1.0 / p) for p, v in self.known_norms.items()}
        f = self.func
        return Function1D(
            func=lambda t: f(scale * t + shift), kind=self.kind,
            interval=interval, decay=self.decay, power=self.power,
            known_integral=integral, known_norms=norms,
            breakpoints=tuple(inv(p) for p in self.breakpoints),
            singular_points=tuple(inv(p) for p in self.singular_points),
            hilbert=hilbert, name=f"{self.name}∘affine", params=self.params,
            halfline=self.halfline and shift == 0.0 and scale > 0)

    def domain(self, R: float) -> tuple[float, float]:
        if self.kind == "compact":
            return self.interval
        if self.kind == "periodic":
            return (-math.pi, math.pi)
        return (-R, R)

    def norm(self, p: float, n: int = 24, R: float = 1e3) -> float:
        """L^p norm over the natural domain (``[-pi, pi]`` when periodic)."""
        if p in self.known_norms:
            return float(self.known_norms[p])
        if self.kind == "power":
            return math.inf
        a, b = self.domain(R)
        x, w = _quad.composite_rule(a, b, self.breakpoints, self.singular_points, n)
        if math.isinf(p):
            return float(np.max(np.abs(self(x)))) if x.size else 0.0
        return float(np.sum(w * np.abs(self(x)) ** p) ** (1.0 / p))


# ----------------------------------------------------------------------------
# registry of named families
# ----------------------------------------------------------------------------

def gaussian(center: float = 0.0, width: float = 1.0) -> Function1D:
    """``exp(-((t - center) / width)**2)``."""
    c, s = float(center), float(width)
    if s <= 0:
        raise ValueError("gaussian width must be positive")
    norms = {p: (s * math.sqrt(math.pi / p)) ** (1.0 / p) for p in (1.0, 2.0, 3.0, 4.0)}
    norms[math.inf] = 1.0
    return Function1D(
        func=lambda t: np.exp(-((t - c) / s) ** 2), kind="decaying",
        decay=math.inf, known_integral=s * math.sqrt(math.pi), known_norms=norms,
        breakpoints=tuple(c + s * k for k in range(-8, 9)),
        name="gaussian", params=(c, s))


def bump(center: float = 0.0, radius: float = 1.0) -> Function1D:
    """Smooth compactly supported ``exp(-1 / (1 - u**2))``, ``u = (t - c) / r``."""
    c, r = float(center), float(radius)
    if r <= 0:
        raise ValueError("bump radius must be positive")

    def f(t):
        u = (t - c) / r
        inside = np.abs(u) < 1.0
        safe = np.where(inside, u, 0.0)
        return np.where(inside, np.exp(-1.0 / (1.0 - safe ** 2)), 0.0)

    return Function1D(func=f, kind="compact", interval=(c - r, c + r),
                      breakpoints=tuple(c + r * k / 4 for k in range(-3, 4)),
                      name="bump", params=(c, r))


def indicator(a: float = 0.0, b: float = 1.0) -> Function1D:
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError("indicator needs a < b")
    L = b - a
    norms = {p: L ** (1.0 / p) for p in (1.0, 1.5, 2.0, 3.0, 4.0)}
    norms[math.inf] = 1.0
    return Function1D(func=lambda t: np.ones_like(t), kind="compact",
                      interval=(a, b), known_integral=L, known_norms=norms,
                      name="indicator", params=(a, b))


def power(s: float = 0.5) -> Function1D:
    """``sgn(t) |t|**-s`` with its closed-form Hilbert transform
    ``-cot(pi s / 2) |x|**-s``."""
    s = float(s)
    if not 0.0 < s < 1.0:
        raise ValueError("power exponent must lie in (0, 1)")
    cot = 1.0 / math.tan(0.5 * math.pi * s)

    def f(t):
        return np.sign(t) * np.abs(t) ** (-s)

    def hf(x):
        return -cot * np.abs(np.asarray(x, dtype=float)) ** (-s)

    return Function1D(func=f, kind="power", power=s, singular_points=(0.0,),
                      hilbert=hf, name="power", params=(s,))


def cauchy(width: float = 1.0) -> Function1D:
    """``w**2 / (w**2 + t**2)``."""
    w = float(width)
    return Function1D(func=lambda t: w * w / (w * w + t * t), kind="decaying",
                      decay=2.0, known_integral=math.pi * w,
                      known_norms={1.0: math.pi * w, 2.0: math.sqrt(0.5 * math.pi * w)},
                      breakpoints=tuple(w * k for k in (-4, -2, -1, 0, 1, 2, 4)),
                      name="cauchy", params=(w,))


def exp_decay(rate: float = 1.0) -> Function1D:
    """``exp(-rate t)`` on the half line (zero for t < 0)."""
    a = float(rate)
    if a <= 0:
        raise ValueError("rate must be positive")
    f = lambda t: np.where(t >= 0, np.exp(-a * np.maximum(t, 0.0)), 0.0)
    return Function1D(func=f, kind="decaying", decay=math.inf,
                      known_integral=1.0 / a, known_norms={1.0: 1.0 / a},
                      breakpoints=(0.0,) + tuple(k / a for k in (1, 2, 4, 8, 16)),
                      name="exp", params=(a,), halfline=True)


def trigpoly(coeffs: Mapping[int, complex]) -> Function1D:
    """``sum c_k e_k`` with ``e_k(t) = exp(i k t) / sqrt(2 pi)``."""
    ks = np.array(sorted(coeffs), dtype=int)
    cs = np.array([coeffs[k] for k in ks], dtype=complex)

    span = int(ks[-1] - ks[0]) if ks.size else 0
    dense = np.zeros(span + 1, dtype=complex)
    if ks.size:
        dense[ks - ks[0]] = cs

    def f(t):
        t = np.asarray(t, dtype=float)
        if span > 4 * ks.size:
            return np.exp(1j * t[..., None] * ks) @ cs / SQRT_2PI
        # Horner in z = exp(it); one exponential per node
        z = np.exp(1j * t)
        acc = np.full(t.shape, dense[-1])
        for c in dense[-2::-1]:
            acc = acc * z + c
        return acc * np.exp(1j * ks[0] * t) / SQRT_2PI if ks.size else acc

    l2 = float(np.sqrt(np.sum(np.abs(cs) ** 2)))
    return Function1D(func=f, kind="periodic", known_norms={2.0: l2},
                      known_integral=complex(coeffs.get(0, 0.0)) * SQRT_2PI,
                      name="trigpoly", params=tuple((int(k), complex(c)) for k, c in zip(ks, cs)))


def constant(value: float = 1.0) -> Function1D:
    v = float(value)
    return Function1D(func=lambda t: np.full(np.shape(t), v), kind="periodic",
                      known_norms={2.0: abs(v) * SQRT_2PI, math.inf: abs(v)},
                      known_integral=2 * math.pi * v, name="const", params=(v,))


def cosine(k: int = 1) -> Function1D:
    k = int(k)
    norm2 = SQRT_2PI if k == 0 else math.sqrt(math.pi)
    return Function1D(func=lambda t: np.cos(k * t), kind="periodic",
                      known_norms={2.0: norm2, math.inf: 1.0}, name="cos", params=(k,))


def holder_cusp(gamma: float = 0.5) -> Function1D:
    """``|sin(t/2)|**gamma``: even, periodic, Hoelder exactly of order gamma at 0."""
    g = float(gamma)
    if not 0.0 < g < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    return Function1D(func=lambda t: np.abs(np.sin(0.5 * t)) ** g, kind="periodic",
                      singular_points=(0.0,), name="holder-cusp", params=(g,))


def holder_cusp_seminorm(gamma: float) -> float:
    """Exact Hoelder seminorm of :func:`holder_cusp` w.r.t. periodic distance.

    ``||sin a| - |sin b|| <= |sin(a - b)|`` bounds every quotient by
    ``(sin(d/2) / d)**gamma <= 2**-gamma``; the value is approached as
    ``s -> 0`` with ``t = 0``.
    """
    return 2.0 ** (-gamma)


REGISTRY: dict[str, Callable[..., Function1D]] = {
    "gaussian": gaussian,
    "bump": bump,
    "indicator": indicator,
    "power": power,
    "cauchy": cauchy,
    "exp": exp_decay,
    "const": constant,
    "cos": cosine,
    "holder-cusp": holder_cusp,
}


def parse_coeffs(text: str) -> dict[int, complex]:
    """Parse ``"k=1:1,k=-5:0.5"`` (the ``k=`` prefix is optional)."""
    out: dict[int, complex] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if item.startswith("k="):
            item = item[2:]
        k, _, c = item.partition(":")
        if not c:
            raise ValueError(f"bad coefficient entry {item!r}; expected k:value")
        out[int(k)] = out.get(int(k), 0.0) + complex(c.replace(" ", ""))
    if not out:
        raise ValueError("empty coefficient list")
    return out


def from_spec(spec) -> Function1D:
    """Build a descriptor from ``"name:p1,p2"`` or ``{"family": name, "params": [...]}``.

    ``trigpoly`` takes its coefficients as ``"trigpoly:1:1,-5:0.5"`` or a
    ``{"coeffs": {k: c}}`` mapping.
    """
    if isinstance(spec, Function1D):
        return spec
    if isinstance(spec, Mapping):
        name = spec["family"]
        if name == "trigpoly":
            return trigpoly({int(k): complex(v) for k, v in spec["coeffs"].items()})
        params = list(spec.get("params", []))
    else:
        name, _, rest = str(spec).partition(":")
        if name == "trigpoly":
            return trigpoly(parse_coeffs(rest))
        params = [float(p) for p in rest.split(",") if p.strip()] if rest else []
    if name not in REGISTRY:
        raise ValueError(f"unknown function family {name!r}; "
                         f"choose from {sorted(REGISTRY) + ['trigpoly']}")
    return REGISTRY[name](*params)


# ----------------------------------------------------------------------------
# circle grids and spectra
# ----------------------------------------------------------------------------

def circle_nodes(N: int) -> np.ndarray:
    """Half-offset nodes ``-pi + (j + 1/2) 2pi/N``; symmetric, never 0 or +-pi."""
    if N % 2:
        raise ValueError("circle grids need an even node count")
    h = 2.0 * math.pi / N
    return (np.arange(N) + 0.5 - N / 2) * h


@dataclass(frozen=True, eq=False)
class CircleFunction:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if v.size < 8 or v.size % 2:
            raise ValueError("CircleFunction needs an even N >= 8")
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return self.values.size

    @property
    def nodes(self) -> np.ndarray:
        return circle_nodes(self.N)

    @classmethod
    def sample(cls, f: Callable, N: int) -> "CircleFunction":
        return cls(np.asarray(f(circle_nodes(N))))

    def __call__(self, t):
        """Trigonometric interpolant through the samples."""
        spec = analyze(self, self.N // 2 - 1)
        return spec(t)


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    """Coefficients ``c_k`` for ``-K_max <= k <= K_max`` in the basis ``e_k``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise ValueError("coeffs must have odd length 2*K_max + 1")
        object.__setattr__(self, "coeffs", c)

    @property
    def K_max(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.K_max, self.K_max + 1)

    def __getitem__(self, k: int) -> complex:
        if abs(k) > self.K_max:
            return 0j
        return complex(self.coeffs[k + self.K_max])

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex], K_max: int | None = None):
        K = max(abs(k) for k in coeffs) if K_max is None else K_max
        c = np.zeros(2 * K + 1, dtype=complex)
        for k, v in coeffs.items():
            c[k + K] += v
        return cls(c)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.exp(1j * t[..., None] * self.ks) @ self.coeffs / SQRT_2PI


def analyze(phi: CircleFunction, K_max: int) -> FourierSpectrum:
    """Discrete coefficients ``c_k = sqrt(2pi)/N sum_j phi(a_j) exp(-i k a_j)``."""
    N = phi.N
    if N < 2 * K_max + 2:
        raise ValueError(f"K_max={K_max} aliases on N={N} nodes (need N >= 2K+2)")
    h = 2.0 * math.pi / N
    F = np.fft.fft(phi.values)
    ks = np.arange(-K_max, K_max + 1)
    # a_j = -pi + (j + 1/2) h
    phase = np.exp(1j * ks * (math.pi - 0.5 * h))
    return FourierSpectrum(SQRT_2PI / N * phase * F[ks % N])


def synthesize(spec: FourierSpectrum, N: int) -> CircleFunction:
    if N < 2 * spec.K_max + 2:
        raise ValueError(f"N={N} too small for K_max={spec.K_max}")
    h = 2.0 * math.pi / N
    ks = spec.ks
    F = np.zeros(N, dtype=complex)
    F[ks % N] = spec.coeffs * np.exp(-1j * ks * (math.pi - 0.5 * h))
    return CircleFunction(np.fft.ifft(F) * N / SQRT_2PI)


# ----------------------------------------------------------------------------
# tensor sums
# ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TensorSum2D:
    """``f(y1, y2) = sum_i f_i(y1) g_i(y2)`` with a projective-norm proxy.

    ``projective_bound`` is ``sum_i ||f_i||_q ||g_i||_p`` for this
    representation; it only bounds the projective norm from above.
    """

    terms: tuple[tuple[Function1D, Function1D], ...]
    q: float = 2.0
    p: float = 2.0
    bound: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((f, g) for f, g in self.terms))

    @property
    def projective_bound(self) -> float:
        if self.bound is not None:
            return float(self.bound)
        return float(sum(f.norm(self.q) * g.norm(self.p) for f, g in self.terms))

    def __call__(self, y1, y2):
        y1, y2 = np.broadcast_arrays(np.asarray(y1, float), np.asarray(y2, float))
        out = np.zeros(y1.shape)
        for f, g in self.terms:
            out = out + f(y1) * g(y2)
        return out

    def scaled(self, c: float) -> "TensorSum2D":
        terms = tuple((_scale(f, c), g) for f, g in self.terms)
        bound = None if self.bound is None else abs(c) * self.bound
        return TensorSum2D(terms, self.q, self.p, bound)


def _scale(f: Function1D, c: float) -> Function1D:
    func = f.func
    integral = None if f.known_integral is None else c * f.known_integral
    hilbert = None
    if f.hilbert is not None:
        h = f.hilbert
        hilbert = lambda x: c * h(x)
    return Function1D(func=lambda t: c * func(t), kind=f.kind, interval=f.interval,
                      decay=f.decay, power=f.power, known_integral=integral,
                      known_norms={p: abs(c) * v for p, v in f.known_norms.items()},
                      breakpoints=f.breakpoints, singular_points=f.singular_points,
                      hilbert=hilbert, name=f.name, params=f.params,
                      halfline=f.halfline)


@dataclass(frozen=True, eq=False)
class Function2D:
    """Non-tensor plane function with a common tail exponent."""

    func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    decay: float = math.inf
    name: str = "custom2d"

    def __call__(self, y1, y2):
        with np.errstate(all="ignore"):
            return self.func(np.asarray(y1, float), np.asarray(y2, float))


@dataclass(frozen=True, eq=False)
class PolarTensorSum:
    """``phi(rho, theta) = sum_i a_i(rho) b_i(theta)``."""

    terms: tuple[tuple[Function1D, Function1D | CircleFunction], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((a, b) for a, b in self.terms))
        for a, _ in self.terms:
            if a.kind == "power":
                raise ValueError("radial factor of power type is not integrable on R+")
            if a.kind == "decaying" and a.decay <= 1.0 and a.known_integral is None:
                raise ValueError("radial factor must be integrable: decay > 1 required")

    def __call__(self, rho, theta):
        rho, theta = np.broadcast_arrays(np.asarray(rho, float), np.asarray(theta, float))
        out = np.zeros(rho.shape, dtype=complex)
        for a, b in self.terms:
            out = out + a(rho) * b(theta)
        return out


# ----------------------------------------------------------------------------
# Hoelder seminorm estimate
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class HolderWitness:
    gamma: float
    seminorm: float
    provenance: str = "analytic"
    n_points: int | None = None

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        if self.seminorm < 0:
            raise ValueError("seminorm must be nonnegative")


def periodic_distance(s, t):
    d = np.abs(np.asarray(s) - np.asarray(t)) % (2.0 * math.pi)
    return np.minimum(d, 2.0 * math.pi - d)


def holder_seminorm_estimate(phi: Callable, gamma: float, n_points: int) -> HolderWitness:
    """Lower estimate of the Lambda_gamma seminorm over all pairs of sample points.

    Sample points are the first ``n_points`` van der Corput points mapped to
    ``[-pi, pi)``, so point sets are nested and the estimate is nondecreasing
    in ``n_points``.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    if n_points < 2:
        raise ValueError("need at least two sample points")
    t = -math.pi + 2.0 * math.pi * _quad.van_der_corput(n_points)
    v = np.asarray(phi(t))
    best = 0.0
    for i in range(1, n_points):
        d = periodic_distance(t[i], t[:i])
        q = np.abs(v[i] - v[:i]) / d ** gamma
        best = max(best, float(q.max()))
    return HolderWitness(gamma, best, "grid-estimated", n_points)
