"""Golden-section and bisection searches for unimodal and monotone functionals.

All routines work elementwise on arrays so that batches of independent
one-dimensional searches run in a handful of vectorized evaluations.
"""

from __future__ import annotations

import numpy as np

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo, hi, iters=80):
    """Maximize a unimodal function over [lo, hi] by golden-section search.

    Parameters
    ----------
    f : callable
        Evaluates elementwise on arrays of the same shape as `lo`.
    lo, hi : float or ndarray
        Bracket endpoints; arrays run one search per element.
    iters : int
        Bracket-shrink steps; each multiplies the width by ~0.618.

    Returns
    -------
    x, fx : ndarray (or floats for scalar input)
        Final bracket midpoint and its value.
    """
    scalar = np.isscalar(lo) and np.isscalar(hi)
    lo = np.atleast_1d(np.asarray(lo, dtype=float)).copy()
    hi = np.atleast_1d(np.asarray(hi, dtype=float)).copy()
    lo, hi = np.broadcast_arrays(lo, hi)
    lo, hi = lo.copy(), hi.copy()
    for _ in range(iters):
        x1 = hi - _INV_PHI * (hi - lo)
        x2 = lo + _INV_PHI * (hi - lo)
        f1 = np.asarray(f(x1), dtype=float)
        f2 = np.asarray(f(x2), dtype=float)
        left = f1 >= f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
    xm = 0.5 * (lo + hi)
    fm = np.atleast_1d(np.asarray(f(xm), dtype=float))
    if scalar:
        return float(xm.ravel()[0]), float(fm.ravel()[0])
    return xm, fm


def golden_min(f, lo, hi, iters=80):
    """Minimize a unimodal function over [lo, hi]; see `golden_max`."""
    x, fneg = golden_max(lambda t: -np.asarray(f(t), dtype=float), lo, hi, iters)
    return x, -fneg


def bisect_level(f, lo, hi, level=0.0, increasing=True, iters=100, tol=0.0):
    """Solve f(x) = level for monotone scalar f on a bracketing interval.

    The bracket must satisfy f(lo) <= level <= f(hi) when `increasing`,
    and the reverse otherwise.  Plain bisection; returns the midpoint of
    the final bracket.  `tol` is an absolute bracket-width stop on top of
    the iteration cap.
    """
    lo = float(lo)
    hi = float(hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        val = float(f(mid))
        high_side = (val > level) if increasing else (val < level)
        if high_side:
            hi = mid
        else:
            lo = mid
        if hi - lo <= max(tol, 1e-15 * (abs(lo) + abs(hi))):
            break
    return 0.5 * (lo + hi)


def bisect_level_log(f, lo, hi, level=0.0, increasing=True, iters=200, rtol=0.0):
    """Like `bisect_level` but bisecting in log(x); requires 0 < lo < hi.

    `rtol` bounds the relative width of the final bracket (absolute width
    in log space).
    """
    llo = np.log(float(lo))
    lhi = np.log(float(hi))
    x = bisect_level(lambda u: f(np.exp(u)), llo, lhi, level=level,
                     increasing=increasing, iters=iters, tol=rtol)
    return float(np.exp(x))
