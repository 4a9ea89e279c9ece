"""Equispaced periodic grids on the 1- and 2-torus and norms on them.

Samples live at x_j = 2*pi*j/N per axis and integrals are normalized so the
measure of the whole torus is 1; every norm below is an average, not a sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .search import bisect_level_log, golden_min


class GridFunction:
    """Real samples on an equispaced periodic grid, d in {1, 2}.

    The sample array is copied and frozen at construction; arithmetic
    returns new instances.  2-d grids are square (N x N).
    """

    __slots__ = ("samples",)

    def __init__(self, samples):
        arr = np.array(samples, dtype=float, copy=True)
        if arr.ndim not in (1, 2):
            raise ValueError(f"grid dimension must be 1 or 2, got {arr.ndim}")
        n = arr.shape[0]
        if n < 8 or n % 2 != 0:
            raise ValueError(f"grid size must be even and >= 8, got {n}")
        if arr.ndim == 2 and arr.shape[1] != n:
            raise ValueError(f"2-d grids must be square, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def __setattr__(self, name, value):
        raise AttributeError("GridFunction is immutable")

    @property
    def dim(self):
        return self.samples.ndim

    @property
    def size(self):
        return self.samples.shape[0]

    def __add__(self, other):
        return GridFunction(self.samples + _raw(other))

    def __radd__(self, other):
        return GridFunction(_raw(other) + self.samples)

    def __sub__(self, other):
        return GridFunction(self.samples - _raw(other))

    def __rsub__(self, other):
        return GridFunction(_raw(other) - self.samples)

    def __mul__(self, other):
        return GridFunction(self.samples * _raw(other))

    def __rmul__(self, other):
        return GridFunction(_raw(other) * self.samples)

    def __neg__(self):
        return GridFunction(-self.samples)

    def __repr__(self):
        return f"GridFunction(N={self.size}, d={self.dim})"

    def to_json(self):
        return {"d": self.dim, "N": self.size, "samples": self.samples.tolist()}

    @staticmethod
    def from_json(data):
        arr = np.asarray(data["samples"], dtype=float)
        f = GridFunction(arr)
        if f.dim != data.get("d", f.dim) or f.size != data.get("N", f.size):
            raise ValueError("sample array does not match the declared d/N")
        return f


def _raw(other):
    if isinstance(other, GridFunction):
        return other.samples
    return np.asarray(other, dtype=float)


def grid_points(size, dim):
    """Coordinate arrays x_j = 2*pi*j/N; one array per axis (meshgrid for d=2)."""
    x = 2.0 * np.pi * np.arange(size) / size
    if dim == 1:
        return (x,)
    if dim == 2:
        return tuple(np.meshgrid(x, x, indexing="ij"))
    raise ValueError(f"grid dimension must be 1 or 2, got {dim}")


def discretize(func, size, dim=1):
    """Sample a callable of d periodic coordinates onto the grid."""
    pts = grid_points(size, dim)
    return GridFunction(np.asarray(func(*pts), dtype=float))


def _weight_array(f, weight):
    """Normalized weight samples (mean exactly 1), or None."""
    if weight is None:
        return None
    w = _raw(weight)
    if w.shape != f.samples.shape:
        raise ValueError(f"weight shape {w.shape} does not match samples {f.samples.shape}")
    if np.any(w <= 0.0):
        raise ValueError("weight must be strictly positive")
    return w / np.mean(w)


def lp_norm(f, p, weight=None):
    """(mean of w*|f|**p)**(1/p); max|f| for p = inf."""
    a = np.abs(f.samples)
    if np.isinf(p):
        return float(np.max(a))
    if p < 1.0:
        raise ValueError(f"exponent must be >= 1, got {p}")
    w = _weight_array(f, weight)
    m = np.mean(a ** p) if w is None else np.mean(w * a ** p)
    return float(m ** (1.0 / p))


def orlicz_functional(f, phi, weight=None):
    """Modular mean of phi(|f|) with optional weight."""
    w = _weight_array(f, weight)
    vals = np.asarray(phi(np.abs(f.samples)), dtype=float)
    return float(np.mean(vals) if w is None else np.mean(w * vals))


def luxemburg_norm(f, phi, weight=None, rtol=1e-13):
    """Smallest a > 0 with mean phi(|f|/a) <= 1, by bisection in log a.

    Returns 0 for the zero function.  The modular is nonincreasing in a,
    so the level-1 crossing is found to relative tolerance `rtol`.
    """
    peak = float(np.max(np.abs(f.samples)))
    if peak == 0.0:
        return 0.0
    w = _weight_array(f, weight)
    absf = np.abs(f.samples)

    def modular(a):
        vals = np.asarray(phi(absf / a), dtype=float)
        return float(np.mean(vals) if w is None else np.mean(w * vals))

    # bracket: at a = peak the modular is <= phi(1) ... finite; grow/shrink
    # by decades until the level-1 crossing is enclosed
    lo = hi = peak
    for _ in range(64):
        if modular(hi) <= 1.0:
            break
        hi *= 10.0
    for _ in range(64):
        if modular(lo / 10.0) <= 1.0:
            lo /= 10.0
        else:
            lo /= 10.0
            break
    return bisect_level_log(modular, lo, hi, level=1.0, increasing=False, rtol=rtol)


def orlicz_norm(f, phi, weight=None):
    """inf over k > 0 of (1 + mean phi(k*|f|)) / k.

    Equivalent to the dual-pairing norm for the complementary function;
    always between the Luxemburg norm and twice the Luxemburg norm.
    """
    lux = luxemburg_norm(f, phi, weight)
    if lux == 0.0:
        return 0.0
    w = _weight_array(f, weight)
    absf = np.abs(f.samples)

    def objective(logk):
        k = np.exp(logk)
        vals = np.asarray(phi(np.outer(k, absf.ravel())), dtype=float)
        if w is None:
            mod = np.mean(vals, axis=1)
        else:
            mod = np.mean(vals * w.ravel()[None, :], axis=1)
        return (1.0 + mod) / k

    # the objective is unimodal in k; scan around 1/lux then refine
    center = np.log(1.0 / lux)
    scan = center + np.linspace(-3.0, 3.0, 61)
    heights = objective(scan)
    i = int(np.argmin(heights))
    lo = scan[max(i - 1, 0)]
    hi = scan[min(i + 1, len(scan) - 1)]
    _, val = golden_min(lambda t: objective(np.atleast_1d(t))[0], float(lo), float(hi), iters=80)
    return float(min(val, float(heights[i])))


def orlicz_norm_dual_bound(f, phi, psi, weight=None, trials=64, rng=None):
    """Lower bound sup <|f|, g> over random g with modular of psi at most 1.

    Complements the Amemiya value from above and below:
    dual_bound <= orlicz_norm.  Candidates are built from the derivative
    of phi at the optimal Luxemburg scaling plus random perturbations.
    """
    lux = luxemburg_norm(f, phi, weight)
    if lux == 0.0:
        return 0.0
    if rng is None:
        rng = np.random.default_rng(0)
    w = _weight_array(f, weight)
    wa = np.ones_like(f.samples) if w is None else w
    absf = np.abs(f.samples)

    def pair(g):
        g = np.maximum(g, 0.0)
        mod = float(np.mean(wa * np.asarray(psi(g), dtype=float)))
        if mod <= 0.0:
            return 0.0
        # scale g down to modular exactly 1 (psi convex: psi(g/c) <= psi(g)/c)
        if mod > 1.0:
            scale = bisect_level_log(
                lambda c: float(np.mean(wa * np.asarray(psi(g / c), dtype=float))),
                1e-6, max(mod, 1.0) * 1e3, level=1.0, increasing=False)
            g = g / scale
        return float(np.mean(wa * absf * g))

    best = pair(np.asarray(phi.deriv_plus(absf / lux), dtype=float))
    for _ in range(trials):
        bump = rng.uniform(0.5, 2.0) * np.asarray(
            phi.deriv_plus(absf / (lux * rng.uniform(0.8, 1.25))), dtype=float)
        noise = rng.uniform(0.0, 0.2, size=absf.shape) * np.max(bump)
        best = max(best, pair(bump + noise))
    return best


_VARIANTS = ("lp", "luxemburg", "orlicz")


@dataclass(frozen=True)
class NormSpec:
    """Declarative description of the norm B used by checks and reports.

    variant "lp" uses `p`; "luxemburg" and "orlicz" use the Young
    function `phi`.  `s` and `q` are the optional power parameters
    attached to the space (convexity exponent s >= 2 and its conjugate
    q in (1, 2]); `m` and `M` are optional sharp constants.  For L_p
    with finite p the default s is max(p, 2); each of s, q is filled in
    from the other when only one is given.
    """

    variant: str = "lp"
    p: float = 2.0
    phi: object = None
    s: float = None
    q: float = None
    m: float = None
    M: float = None
    weight: object = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ValueError(f"norm variant must be one of {_VARIANTS}, got {self.variant!r}")
        if self.variant == "lp":
            if self.p < 1.0:
                raise ValueError(f"exponent must be >= 1, got {self.p}")
            # an explicit q overrides the Lebesgue default for s
            if self.s is None and self.q is None and not np.isinf(self.p):
                object.__setattr__(self, "s", max(float(self.p), 2.0))
        elif self.phi is None:
            raise ValueError(f"variant {self.variant!r} needs a Young function")
        if self.s is not None and self.s < 2.0:
            raise ValueError(f"convexity exponent s must be >= 2, got {self.s}")
        if self.q is not None and not (1.0 < self.q <= 2.0):
            raise ValueError(f"smoothness exponent q must lie in (1, 2], got {self.q}")
        if self.q is not None and self.s is not None:
            if abs(1.0 / self.q + 1.0 / self.s - 1.0) > 1e-12:
                raise ValueError(f"q={self.q} and s={self.s} are not conjugate exponents")
        elif self.s is not None:
            object.__setattr__(self, "q", self.s / (self.s - 1.0))
        elif self.q is not None:
            object.__setattr__(self, "s", self.q / (self.q - 1.0))
        if not self.label:
            object.__setattr__(self, "label", self._default_label())

    def _default_label(self):
        if self.variant == "lp":
            return f"L{self.p:g}"
        return f"{self.variant}:{self.phi.kind}"

    def norm(self, f):
        if self.variant == "lp":
            return lp_norm(f, self.p, self.weight)
        if self.variant == "luxemburg":
            return luxemburg_norm(f, self.phi, self.weight)
        return orlicz_norm(f, self.phi, self.weight)

    def to_json(self):
        data = {"norm": self.variant}
        if self.variant == "lp":
            data["p"] = self.p
        else:
            data["phi"] = self.phi.to_json()
        if self.s is not None:
            data["s"] = self.s
        if self.q is not None:
            data["q"] = self.q
        if self.m is not None:
            data["m"] = self.m
        if self.M is not None:
            data["M"] = self.M
        return data

    @staticmethod
    def from_json(data):
        from .young import YoungFunction

        phi = YoungFunction.from_json(data["phi"]) if "phi" in data else None
        variant = data.get("norm", data.get("variant", "lp"))
        return NormSpec(variant=variant, p=data.get("p", 2.0),
                        phi=phi, s=data.get("s"), q=data.get("q"),
                        m=data.get("m"), M=data.get("M"))


def random_smooth(size, dim, rng, band=None, decay=1.0):
    """Random real trigonometric polynomial with polynomially decaying modes.

    Modes are supported on |nu| <= band (default N/3, safely inside the
    alias-free range) with coefficient scale (1 + |nu|**2)**(-decay).
    """
    if band is None:
        band = size // 3
    if dim == 1:
        freqs = np.fft.fftfreq(size) * size
        mask = np.abs(freqs) <= band
        radius2 = freqs ** 2
    else:
        freqs = np.fft.fftfreq(size) * size
        fx, fy = np.meshgrid(freqs, freqs, indexing="ij")
        radius2 = fx ** 2 + fy ** 2
        mask = np.sqrt(radius2) <= band
    shape = (size,) * dim
    spec = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    spec *= mask / (1.0 + radius2) ** decay
    samples = np.fft.ifftn(spec).real
    samples *= size ** dim
    peak = np.max(np.abs(samples))
    if peak > 0:
        samples = samples / peak
    return GridFunction(samples)
