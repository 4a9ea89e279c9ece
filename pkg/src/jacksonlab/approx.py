"""Best trigonometric approximation and K-functionals.

Upper bounds for the best-approximation error come from two explicit
candidates inside the admissible degree band (partial sum, and a ramped
projection at half degree); an optional projected-subgradient pass tightens
them for non-Hilbert norms.  K-functionals are evaluated through three
routes: a realization over smoothed candidates, a heat-semigroup
difference, and a circular-mean difference on the 2-torus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import GridFunction, lp_norm, luxemburg_norm
from .ops import (_apply_multiplier, _as_norm, _mode_radius2, laplacian_power,
                  semigroup_difference, spherical_mean)
from .search import golden_min


def degree_below(lam):
    """Largest admissible degree strictly below lam (at least 0)."""
    return max(0, math.ceil(lam - 1e-9) - 1)


def projection(f, n, kind="partial_sum"):
    """Band projection of degree n.

    "partial_sum" keeps modes with |nu| <= n exactly.  "vallee_poussin"
    ramps linearly from 1 at |nu| <= n to 0 at |nu| >= 2n, so its output
    has degree at most 2n - 1 but much better norm behaviour.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"degree must be a nonnegative integer, got {n}")
    rad = np.sqrt(_mode_radius2(f.size, f.dim))
    if kind == "partial_sum":
        mult = (rad <= n + 1e-9).astype(float)
    elif kind == "vallee_poussin":
        if n == 0:
            mult = (rad <= 1e-9).astype(float)
        else:
            mult = np.clip((2.0 * n - rad) / n, 0.0, 1.0)
    else:
        raise ValueError(f"unknown projection kind {kind!r}")
    return _apply_multiplier(f, mult)


@dataclass(frozen=True)
class ApproxResult:
    """Best-approximation error bounds for one degree."""

    degree: int
    upper: float
    method: str
    optimized: float = None

    @property
    def value(self):
        return self.upper if self.optimized is None else min(self.upper, self.optimized)


def best_approx(f, n, norm=None, refine=False, iters=500, step=0.5):
    """Distance from f to trigonometric polynomials of degree at most n.

    Returns an ApproxResult whose `upper` is the smaller of the two
    explicit candidates (both lie inside the degree band: the ramped
    candidate is built at degree n//2 so its output degree stays < n).
    With refine=True a projected-subgradient descent polishes the
    candidate; this needs a declarative norm (NormSpec or None for L2).
    """
    nfun = _as_norm(norm)
    candidates = [("partial_sum", projection(f, n, "partial_sum"))]
    if n >= 2:
        candidates.append(("vallee_poussin", projection(f, n // 2, "vallee_poussin")))
    scored = [(nfun(f - g), name, g) for name, g in candidates]
    upper, method, start = min(scored, key=lambda item: item[0])
    if not refine:
        return ApproxResult(int(n), float(upper), method)
    if norm is not None and not hasattr(norm, "norm"):
        raise ValueError("refine needs a declarative norm, not a bare callable")
    optimized = _refine(f, int(n), start, float(upper), norm, iters, step)
    return ApproxResult(int(n), float(upper), method, optimized=float(min(optimized, upper)))


def _normalized_weight(spec, shape):
    if spec is None or spec.weight is None:
        return np.ones(shape)
    w = np.asarray(spec.weight, dtype=float)
    return w / np.mean(w)


def _norm_subgradient(u, spec):
    """Subgradient of the norm at sample vector u (zero vector at u = 0)."""
    size = u.size
    w = _normalized_weight(spec, u.shape)
    if spec is None or spec.variant == "lp":
        p = 2.0 if spec is None else spec.p
        if np.isinf(p):
            grad = np.zeros_like(u)
            j = np.unravel_index(np.argmax(np.abs(u)), u.shape)
            grad[j] = np.sign(u[j])
            return grad
        nval = lp_norm(GridFunction(u), p, None if spec is None else spec.weight)
        if nval == 0.0:
            return np.zeros_like(u)
        return (w / size) * np.abs(u) ** (p - 1.0) * np.sign(u) / nval ** (p - 1.0)
    phi = spec.phi
    absu = np.abs(u)
    if spec.variant == "luxemburg":
        a = luxemburg_norm(GridFunction(u), phi, spec.weight)
        if a == 0.0:
            return np.zeros_like(u)
        dphi = np.asarray(phi.deriv_plus(absu / a), dtype=float)
        denom = float(np.sum(w * dphi * absu))
        if denom <= 0.0:
            return np.zeros_like(u)
        return a * w * dphi * np.sign(u) / denom
    # orlicz: envelope derivative at the optimal scaling k*
    a = luxemburg_norm(GridFunction(u), phi, spec.weight)
    if a == 0.0:
        return np.zeros_like(u)

    def objective(logk):
        k = math.exp(logk)
        return (1.0 + float(np.mean(w * np.asarray(phi(k * absu), dtype=float)))) / k

    center = math.log(1.0 / a)
    logk, _ = golden_min(objective, center - 2.0, center + 2.0, iters=60)
    kstar = math.exp(float(logk))
    return (w / size) * np.asarray(phi.deriv_plus(kstar * absu), dtype=float) * np.sign(u)


def _refine(f, n, start, start_val, spec, iters, step):
    rad = np.sqrt(_mode_radius2(f.size, f.dim))
    mask = rad <= n + 1e-9
    nfun = _as_norm(spec)
    g = start.samples.copy()
    best = start_val
    gamma0 = step * max(start_val, 1e-15)
    for k in range(iters):
        u = f.samples - g
        grad = _norm_subgradient(u, spec)
        direction = np.fft.ifftn(np.fft.fftn(grad) * mask).real
        scale = math.sqrt(float(np.mean(direction ** 2)))
        if scale < 1e-300:
            break
        g = g + (gamma0 / math.sqrt(k + 1.0)) * direction / scale
        best = min(best, nfun(GridFunction(f.samples - g)))
    return best


def directional_deriv(f, xi=None, r=1):
    """r-th derivative along direction xi (unit vector for d=2, sign for d=1).

    Odd orders zero out the unpaired Nyquist slots; band-limited inputs
    are differentiated exactly.
    """
    if r < 1 or r != int(r):
        raise ValueError(f"derivative order must be a positive integer, got {r}")
    r = int(r)
    n = np.fft.fftfreq(f.size) * f.size
    if f.dim == 1:
        dot = n * (1.0 if xi is None else float(xi))
        nyq = np.zeros(f.size, dtype=bool)
        nyq[f.size // 2] = True
    else:
        if xi is None:
            raise ValueError("2-d directional derivative needs a direction")
        x0, x1 = (float(v) for v in xi)
        fx, fy = np.meshgrid(n, n, indexing="ij")
        dot = fx * x0 + fy * x1
        nyq = np.zeros((f.size, f.size), dtype=bool)
        nyq[f.size // 2, :] = True
        nyq[:, f.size // 2] = True
    mult = (1j * dot) ** r
    if r % 2 == 1:
        mult = np.where(nyq, 0.0, mult)
    return _apply_multiplier(f, mult)


@dataclass(frozen=True)
class KFuncResult:
    """K-functional value with the route that produced it."""

    t: float
    ell: int
    route: str
    value: float
    degree: int = None
    notes: tuple = ()


def k_functional(f, ell, t, norm=None, route="realization"):
    """K-functional between B and the domain of the ell-th power of the Laplacian.

    realization: min over candidate degrees n in {0, ceil(1/t), 2*ceil(1/t)}
    of |f - P_n f| + t^(2*ell) * |Laplacian^ell P_n f| with ramped
    projections (n = 0 uses the mean).  heat: |(H(t^2) - I)^ell f| for the
    heat semigroup H.  sphere (d=2): |V(t) f - f| with the order-ell
    circular mean; radii beyond pi/2 are flagged in `notes`.
    """
    if t <= 0.0:
        raise ValueError(f"scale t must be positive, got {t}")
    if ell < 1 or ell != int(ell):
        raise ValueError(f"order must be a positive integer, got {ell}")
    ell = int(ell)
    nfun = _as_norm(norm)
    if route == "realization":
        n0 = max(1, math.ceil(1.0 / t - 1e-9))
        best_val, best_deg = None, None
        for n in (0, n0, 2 * n0):
            if n == 0:
                p = GridFunction(np.full_like(f.samples, float(np.mean(f.samples))))
                val = nfun(f - p)
            else:
                p = projection(f, n, "vallee_poussin")
                val = nfun(f - p) + t ** (2 * ell) * nfun(laplacian_power(p, ell))
            if best_val is None or val < best_val:
                best_val, best_deg = val, n
        return KFuncResult(float(t), ell, route, float(best_val), degree=best_deg)
    if route == "heat":
        val = nfun(semigroup_difference(f, t * t, "heat", ell))
        return KFuncResult(float(t), ell, route, float(val))
    if route == "sphere":
        if f.dim != 2:
            raise ValueError("sphere route needs a 2-d grid")
        notes = ("radius beyond pi/2, values are extrapolated",) if t > math.pi / 2.0 else ()
        val = nfun(spherical_mean(f, t, ell) - f)
        return KFuncResult(float(t), ell, route, float(val), notes=notes)
    raise ValueError(f"unknown route {route!r}")


def k_delta(f, m, heat_time, norm=None):
    """Norm of (H(heat_time) - I)^m f, the heat-difference K-functional proxy."""
    nfun = _as_norm(norm)
    return float(nfun(semigroup_difference(f, heat_time, "heat", m)))
