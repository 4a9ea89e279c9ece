"""Young functions: builtins, numerical conjugation, growth diagnostics, patching.

A Young function is convex, strictly increasing on (0, oo), and vanishes at 0.
This module provides the builtin families used by the Orlicz-norm machinery::

    power(p)          u**p                          p >= 1
    two_power(a, b)   max(u**a, u**b)               1 < a < b
    log_power(r)      u**r * (1 + |log u|)          r >= (3 + sqrt 5)/2
    zygmund(p, a)     u**p * log(2 + u)**(a*p)      p >= 1, a*p >= 1
    exp_growth()      exp(u) - 1 - u

plus three derived constructions: the complementary (convex-conjugate)
function, computed numerically; the doubling diagnostics `check_delta2` /
`check_nabla2`; and `patch`, which replaces a convex gap of u -> phi(u**(1/s))
by a constant-slope segment so the composition becomes globally concave.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .search import bisect_level_log, golden_max

_LOG_POWER_GATE = (3.0 + math.sqrt(5.0)) / 2.0

_BUILTIN_ARITY = {"power": 1, "two_power": 2, "log_power": 1, "zygmund": 2, "exp": 0}


class YoungFunction:
    """Evaluable Young function with one-sided derivatives.

    Instances are immutable once built and safe to share across threads.
    Values and derivatives accept scalars or arrays of nonnegative numbers.
    """

    def __init__(self, kind, params=(), breakpoints=(), c1=1.0, c2=0.0, base=None):
        self.kind = str(kind)
        self.params = tuple(float(v) for v in params)
        self.breakpoints = tuple(float(v) for v in breakpoints)
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.base = base
        if self.kind.startswith("patched:"):
            if base is None or len(self.breakpoints) != 2:
                raise ValueError("patched Young function needs a base and two breakpoints")
            a, b = self.breakpoints
            s = self.params[-1]
            # slope of the replacement segment, chosen so the derivative of
            # phi~(u**(1/s)) is continuous at the b-side junction
            self._seg_slope = base.deriv_plus(b) * b ** (1.0 / s - 1.0)
            self._gamma = 2.0 - 1.0 / s
            self._mid_base = self.c1 * float(base(a))
        elif self.kind.startswith("conjugate:"):
            if base is None:
                raise ValueError("conjugate Young function needs a base")
            y_max, resolution = self.params[-2], int(self.params[-1])
            self._xgrid = np.geomspace(1e-6, 1e6, resolution)
            self._base_grid = np.asarray(base(self._xgrid), dtype=float)
        elif self.kind not in _BUILTIN_ARITY:
            raise ValueError(f"unknown Young function kind {self.kind!r}")

    # -- evaluation -----------------------------------------------------

    def __call__(self, x):
        x, scalar = _as_array(x)
        out = self._value(x)
        return float(out[()]) if scalar else out

    def deriv_minus(self, x):
        """Left derivative; at 0 the right derivative is returned."""
        x, scalar = _as_array(x)
        out = self._deriv(x, side="minus")
        return float(out[()]) if scalar else out

    def deriv_plus(self, x):
        """Right derivative."""
        x, scalar = _as_array(x)
        out = self._deriv(x, side="plus")
        return float(out[()]) if scalar else out

    def argmax_support(self, y):
        """Maximizer x(y) of x*y - phi(x); only defined for conjugate kinds."""
        if not self.kind.startswith("conjugate:"):
            raise ValueError("argmax_support is only available on conjugate functions")
        y, scalar = _as_array(y)
        _, xs = self._conj_values(np.ravel(y), want_argmax=True)
        xs = xs.reshape(y.shape)
        return float(xs[()]) if scalar else xs

    def _value(self, x):
        kind = self.kind
        if kind == "power":
            return x ** self.params[0]
        if kind == "two_power":
            a, b = self.params
            return np.where(x <= 1.0, x ** a, x ** b)
        if kind == "log_power":
            r = self.params[0]
            safe = np.where(x > 0.0, x, 1.0)
            return np.where(x > 0.0, safe ** r * (1.0 + np.abs(np.log(safe))), 0.0)
        if kind == "zygmund":
            p, alpha = self.params
            return x ** p * np.log(2.0 + x) ** (alpha * p)
        if kind == "exp":
            return np.expm1(x) - x
        if kind.startswith("patched:"):
            return self._patched_value(x)
        if kind.startswith("conjugate:"):
            vals, _ = self._conj_values(np.ravel(x))
            return vals.reshape(x.shape)
        raise AssertionError(kind)

    def _deriv(self, x, side):
        kind = self.kind
        if kind == "power":
            p = self.params[0]
            return p * x ** (p - 1.0)
        if kind == "two_power":
            a, b = self.params
            low = a * x ** (a - 1.0)
            high = b * x ** (b - 1.0)
            cut = (x <= 1.0) if side == "minus" else (x < 1.0)
            return np.where(cut, low, high)
        if kind == "log_power":
            r = self.params[0]
            safe = np.where(x > 0.0, x, 1.0)
            low = safe ** (r - 1.0) * (r - 1.0 - r * np.log(safe))
            high = safe ** (r - 1.0) * (r + 1.0 + r * np.log(safe))
            cut = (x <= 1.0) if side == "minus" else (x < 1.0)
            out = np.where(cut, low, high)
            return np.where(x > 0.0, out, 0.0)
        if kind == "zygmund":
            p, alpha = self.params
            ell = np.log(2.0 + x)
            return x ** (p - 1.0) * ell ** (alpha * p - 1.0) * (p * ell + alpha * p * x / (2.0 + x))
        if kind == "exp":
            return np.expm1(x)
        if kind.startswith("patched:"):
            return self._patched_deriv(x, side)
        if kind.startswith("conjugate:"):
            _, xs = self._conj_values(np.ravel(x), want_argmax=True)
            return xs.reshape(x.shape)
        raise AssertionError(kind)

    def _patched_value(self, x):
        a, b = self.breakpoints
        base = self.base
        mid = self._mid_base + self._seg_slope * (
            np.clip(x, a, b) ** self._gamma - a ** self._gamma) / self._gamma
        return np.where(x <= a, self.c1 * base(x),
                        np.where(x >= b, self.c2 + base(x), mid))

    def _patched_deriv(self, x, side):
        a, b = self.breakpoints
        base = self.base
        s = self.params[-1]
        seg = self._seg_slope * np.where(x > 0.0, np.where(x > 0.0, x, 1.0) ** (1.0 - 1.0 / s), 0.0)
        dm = base.deriv_minus(x) if side == "minus" else base.deriv_plus(x)
        if side == "minus":
            return np.where(x <= a, self.c1 * dm, np.where(x <= b, seg, dm))
        return np.where(x < a, self.c1 * dm, np.where(x < b, seg, dm))

    def _conj_values(self, y, want_argmax=False):
        y = np.asarray(y, dtype=float)
        vals = np.zeros_like(y)
        args = np.zeros_like(y)
        pos = y > 0.0
        if np.any(pos):
            yy = y[pos]
            xg = self._xgrid
            mass = yy[:, None] * xg[None, :] - self._base_grid[None, :]
            idx = np.argmax(mass, axis=1)
            grid_best = mass[np.arange(len(yy)), idx]
            lo = xg[np.maximum(idx - 1, 0)]
            hi = xg[np.minimum(idx + 1, len(xg) - 1)]
            base = self.base

            def height(logx):
                x = np.exp(logx)
                return yy * x - np.asarray(base(x), dtype=float)

            logx, refined = golden_max(height, np.log(lo), np.log(hi), iters=90)
            better = refined >= grid_best
            vals[pos] = np.maximum(np.where(better, refined, grid_best), 0.0)
            args[pos] = np.where(better, np.exp(logx), xg[idx])
        if want_argmax:
            return vals, args
        return vals, None

    # -- serialization --------------------------------------------------

    def to_json(self):
        return {
            "kind": self.kind,
            "params": list(self.params),
            "breakpoints": list(self.breakpoints),
            "c1": self.c1,
            "c2": self.c2,
        }

    @staticmethod
    def from_json(data):
        kind = data["kind"]
        params = tuple(float(v) for v in data.get("params", ()))
        if kind.startswith("patched:"):
            base = builtin(kind.split(":", 1)[1], *params[:-1])
            return YoungFunction(kind, params, tuple(data["breakpoints"]),
                                 c1=data["c1"], c2=data["c2"], base=base)
        if kind.startswith("conjugate:"):
            base = builtin(kind.split(":", 1)[1], *params[:-2])
            return complementary(base, y_max=params[-2], resolution=int(params[-1]))
        return builtin(kind, *params)

    def __repr__(self):
        bits = ", ".join(f"{v:g}" for v in self.params)
        return f"YoungFunction({self.kind}[{bits}])"


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


# -- builtin constructors ----------------------------------------------


def power(p):
    """u**p for p >= 1."""
    if p < 1.0:
        raise ValueError(f"power exponent must be >= 1, got {p}")
    return YoungFunction("power", (p,))


def two_power(alpha, beta):
    """max(u**alpha, u**beta) for 1 < alpha < beta."""
    if not (1.0 < alpha < beta):
        raise ValueError(f"two_power needs 1 < alpha < beta, got ({alpha}, {beta})")
    return YoungFunction("two_power", (alpha, beta))


def log_power(r):
    """u**r * (1 + |log u|); convex only for r >= (3 + sqrt 5)/2."""
    if r < _LOG_POWER_GATE:
        raise ValueError(
            f"log_power exponent must be >= (3 + sqrt 5)/2 ~= {_LOG_POWER_GATE:.6f}, got {r}")
    return YoungFunction("log_power", (r,))


def zygmund(p, alpha):
    """u**p * log(2 + u)**(alpha*p) for p >= 1 and alpha*p >= 1."""
    if p < 1.0 or alpha * p < 1.0:
        raise ValueError(f"zygmund needs p >= 1 and alpha*p >= 1, got ({p}, {alpha})")
    return YoungFunction("zygmund", (p, alpha))


def exp_growth():
    """exp(u) - 1 - u; grows too fast for the doubling condition."""
    return YoungFunction("exp", ())


def builtin(kind, *params):
    """Construct a builtin Young function by kind name."""
    table = {"power": power, "two_power": two_power, "log_power": log_power,
             "zygmund": zygmund, "exp": exp_growth}
    if kind not in table:
        raise ValueError(f"unknown Young function kind {kind!r}")
    if len(params) != _BUILTIN_ARITY[kind]:
        raise ValueError(f"{kind} takes {_BUILTIN_ARITY[kind]} parameters, got {len(params)}")
    return table[kind](*params)


# -- conjugation --------------------------------------------------------


def _superlinear_slope(phi, x_hi=1e6):
    """Top-of-grid secant slope and per-two-decade growth of phi(x)/x."""
    with np.errstate(over="ignore", invalid="ignore"):
        top = float(phi(x_hi))
        mid = float(phi(x_hi / 2.0))
        low = float(phi(x_hi / 100.0))
    if not (np.isfinite(top) and np.isfinite(mid) and np.isfinite(low)):
        return np.inf, np.inf
    slope = (top - mid) / (x_hi / 2.0)
    growth = (top / x_hi) / (low / (x_hi / 100.0))
    return slope, growth


def complementary(phi, y_max=1e3, resolution=2048):
    """Complementary Young function psi(y) = sup_x (x*y - phi(x)).

    The supremum is taken over a log-spaced working grid with golden-section
    refinement around the grid argmax, so psi is accurate for arguments up
    to roughly `y_max`.  Raises ValueError when phi grows too slowly for the
    supremum to be attained on the working grid.
    """
    slope, growth = _superlinear_slope(phi)
    if not (np.isfinite(slope) and slope >= y_max and growth >= 1.5):
        raise ValueError("complement undefined at working precision: "
                         f"phi(x)/x reaches only {slope:.3g} (need {y_max:.3g})")
    kind = "conjugate:" + phi.kind
    params = phi.params + (float(y_max), float(resolution))
    return YoungFunction(kind, params, base=phi)


# -- growth diagnostics -------------------------------------------------


@dataclass(frozen=True)
class Delta2Result:
    holds: bool
    K: float
    slope: float


@dataclass(frozen=True)
class Nabla2Result:
    holds: bool
    a: float


def check_delta2(phi, u_lo=1e-4, u_hi=1e4, points=257, slope_tol=0.01):
    """Empirical doubling check: phi(2x) <= K * phi(x) on [u_lo, u_hi].

    `K` is the largest observed ratio.  `holds` requires the ratio to be
    finite and its log-growth over the top decade to stay below
    `slope_tol`, so ratios that keep climbing fail even when finite.
    """
    x = np.geomspace(u_lo, u_hi, points)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        ratio = np.asarray(phi(2.0 * x), dtype=float) / np.asarray(phi(x), dtype=float)
        r_top = float(phi(2.0 * u_hi)) / float(phi(u_hi))
        r_dec = float(phi(0.2 * u_hi)) / float(phi(0.1 * u_hi))
    if not np.all(np.isfinite(ratio)) or not np.isfinite(r_top):
        return Delta2Result(False, np.inf, np.inf)
    slope = float(np.log(r_top) - np.log(r_dec))
    constant = float(np.max(ratio))
    return Delta2Result(bool(slope < slope_tol), constant, slope)


def check_nabla2(psi, u_lo=1e-2, u_hi=1e2, a_points=96, x_points=121):
    """Search for a > 1 with psi(x) <= psi(a*x) / (2*a) on [u_lo, u_hi].

    Scans a log grid of candidate factors in (1, 64] and returns the
    smallest feasible one in the `a` field.
    """
    a_grid = 2.0 ** (np.arange(1, a_points + 1) / 16.0)
    x = np.geomspace(u_lo, u_hi, x_points)
    px = np.asarray(psi(x), dtype=float)
    for a in a_grid:
        bound = np.asarray(psi(a * x), dtype=float) / (2.0 * a)
        if np.all(px <= bound * (1.0 + 1e-12)):
            return Nabla2Result(True, float(a))
    return Nabla2Result(False, np.inf)


# -- concavity of phi(u**(1/s)) ----------------------------------------


@dataclass(frozen=True)
class ConcavityRegions:
    s: float
    u_lo: float
    u_hi: float
    intervals: tuple

    def covers(self, lo, hi, rtol=1e-3):
        """True when one detected interval contains [lo, hi]."""
        for left, right in self.intervals:
            if left <= lo * (1.0 + rtol) and right >= hi * (1.0 - rtol):
                return True
        return False


def power_concavity_regions(phi, s, u_lo=1e-6, u_hi=1e6, resolution=4096, tol=1e-11):
    """Maximal intervals where u -> phi(u**(1/s)) is concave.

    Concavity is read off the sign of chord defects on a log-spaced grid;
    defects up to `tol` times the local scale count as concave so exactly
    linear stretches are not split by rounding noise.
    """
    if s < 2.0:
        raise ValueError(f"power parameter s must be >= 2, got {s}")
    u = np.geomspace(u_lo, u_hi, resolution)
    g = np.asarray(phi(u ** (1.0 / s)), dtype=float)
    lam = (u[2:] - u[1:-1]) / (u[2:] - u[:-2])
    chord = lam * g[:-2] + (1.0 - lam) * g[2:]
    scale = np.maximum.reduce([np.abs(g[:-2]), np.abs(g[1:-1]), np.abs(g[2:])]) + 1e-300
    ok_mid = (chord - g[1:-1]) <= tol * scale
    ok = np.concatenate([[ok_mid[0]], ok_mid, [ok_mid[-1]]])
    intervals = []
    start = None
    for i, flag in enumerate(ok):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            if i - start >= 2:
                intervals.append((float(u[start]), float(u[i - 1])))
            start = None
    if start is not None and len(ok) - start >= 2:
        intervals.append((float(u[start]), float(u[-1])))
    return ConcavityRegions(float(s), float(u_lo), float(u_hi), tuple(intervals))


def log_power_tail_threshold(r, s):
    """Tail threshold u0 for log_power(r) with power parameter s > r.

    Solves (r/s)*(r/s - 1)*log(u0) = -1 by bisection; beyond u0 the
    logarithmic term alone forces concavity of u -> phi(u**(1/s)).
    """
    if s <= r:
        raise ValueError(f"tail threshold needs s > r, got r={r}, s={s}")
    if r < _LOG_POWER_GATE:
        raise ValueError(f"log_power exponent must be >= {_LOG_POWER_GATE:.6f}, got {r}")
    coeff = (r / s) * (r / s - 1.0)

    def defect(u):
        return coeff * np.log(u) + 1.0

    return bisect_level_log(defect, 1.0 + 1e-12, 1e12, level=0.0, increasing=False)


# -- patching -----------------------------------------------------------


@dataclass(frozen=True)
class PatchResult:
    phi: YoungFunction
    c1: float
    c2: float
    A: float


def patch(phi, s, a, b, u_lo=1e-6, u_hi=1e6, resolution=4096):
    """Bridge the convex gap of u -> phi(u**(1/s)) between a and b.

    Requires the composition to be concave on [u_lo, max(a, a**s)] and on
    [min(b, b**s), u_hi].  The result phi~ equals c1*phi below a, equals
    c2 + phi above b, and has a constant-exponent segment in between whose
    slope makes the composed derivative continuous and nonincreasing, so
    phi~(u**(1/s)) is globally concave.  `A` reports the equivalence
    constant sup max(phi~/phi, phi/phi~) over the working grid.
    """
    if not (0.0 < a < b):
        raise ValueError(f"need 0 < a < b, got a={a}, b={b}")
    if s < 2.0:
        raise ValueError(f"power parameter s must be >= 2, got {s}")
    regions = power_concavity_regions(phi, s, u_lo, u_hi, resolution)
    low_hi = max(a, a ** s)
    high_lo = min(b, b ** s)
    if not regions.covers(u_lo, low_hi):
        raise ValueError(f"concavity precondition fails on [{u_lo:g}, {low_hi:g}]")
    if not regions.covers(high_lo, u_hi):
        raise ValueError(f"concavity precondition fails on [{high_lo:g}, {u_hi:g}]")
    dm_a = float(phi.deriv_minus(a))
    dp_b = float(phi.deriv_plus(b))
    if dm_a <= 0.0 or dp_b <= 0.0:
        raise ValueError("patch requires positive one-sided derivatives at a and b")
    seg_slope = dp_b * b ** (1.0 / s - 1.0)
    c1 = seg_slope / (dm_a * a ** (1.0 / s - 1.0))
    gamma = 2.0 - 1.0 / s
    mid_at_b = c1 * float(phi(a)) + seg_slope * (b ** gamma - a ** gamma) / gamma
    c2 = mid_at_b - float(phi(b))
    tilde = YoungFunction("patched:" + phi.kind, phi.params + (float(s),),
                          breakpoints=(float(a), float(b)), c1=c1, c2=c2, base=phi)
    u = np.geomspace(u_lo, u_hi, resolution)
    old = np.asarray(phi(u), dtype=float)
    new = np.asarray(tilde(u), dtype=float)
    good = (old > 0.0) & (new > 0.0)
    ratios = np.maximum(new[good] / old[good], old[good] / new[good])
    return PatchResult(tilde, c1, c2, float(np.max(ratios)))
