"""Inequality registry and space-geometry estimators.

Every registered check evaluates one norm inequality over a dyadic range of
scales and a family of test functions, reports the per-point table of both
sides, the extremal ratio as the empirical constant, and a pass/fail verdict.
Lower-bound checks require the smallest LHS/RHS ratio to stay positive;
upper-bound checks require the largest ratio to stay finite; all checks also
require the ratio spread (max over median) to stay under a configured bound,
so a constant that drifts across the range fails even when each point is
individually fine.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .approx import best_approx, degree_below, k_delta, k_functional
from .grid import (GridFunction, NormSpec, discretize, luxemburg_norm,
                   orlicz_norm, random_smooth)
from .ops import (_as_norm, _one_parameter_difference, averaged_modulus, cesaro,
                  modulus, semigroup_difference, semigroup_modulus)
from .young import YoungFunction, zygmund

_RHS_FLOOR = 1e-13


@dataclass
class CheckReport:
    """Outcome of one inequality check.

    `table` rows are (index, lhs, rhs); `ratios` aligns with the table and
    holds lhs/rhs, or NaN where the RHS vanished and the row was excluded
    from the constant and the spread.
    """

    check_id: str
    params: dict
    table: tuple
    ratios: tuple
    constant: float
    spread: float
    verdict: str
    runtime_ms: float = 0.0
    seed: int = 0
    resolutions: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self):
        def safe(x):
            return float(x) if x is not None and np.isfinite(x) else None

        return {
            "id": self.check_id,
            "params": self.params,
            "constant": safe(self.constant),
            "spread": safe(self.spread),
            "verdict": self.verdict,
            "runtime_ms": float(self.runtime_ms),
            "seed": int(self.seed),
            "resolutions": self.resolutions,
            "notes": list(self.notes),
            "table": [[int(i), safe(l), safe(r), safe(q)]
                      for (i, l, r), q in zip(self.table, self.ratios)],
        }

    def csv_text(self):
        lines = ["index,lhs,rhs,ratio"]
        for (i, l, r), q in zip(self.table, self.ratios):
            lines.append(f"{i},{l:.17g},{r:.17g},{q:.17g}")
        return "\n".join(lines) + "\n"


def _ratio_stats(rows):
    """Ratios, excluded-row count, and the max/median spread for (lhs, rhs) rows."""
    scale = max((max(l, r) for l, r in rows), default=0.0)
    floor = _RHS_FLOOR * max(scale, 1e-300)
    ratios = []
    kept = []
    for l, r in rows:
        if r > floor:
            q = l / r
            ratios.append(q)
            if np.isfinite(q) and q > 0.0:
                kept.append(q)
        else:
            ratios.append(float("nan"))
    if kept:
        med = float(np.median(kept))
        spread = float(np.max(kept) / med) if med > 0.0 else float("inf")
    else:
        spread = float("inf")
    dropped = sum(1 for q in ratios if not np.isfinite(q))
    return ratios, kept, spread, dropped


def _finish(check_id, params_used, rows, direction, spread_bound, seed,
            resolutions, notes=(), lower_threshold=0.0, upper_cap=None,
            require_all_at_least=None):
    """Assemble a CheckReport from raw (lhs, rhs) rows.

    direction "lower": constant is the minimum kept ratio and must exceed
    `lower_threshold`.  direction "upper": constant is the maximum kept
    ratio and must stay finite (and below `upper_cap` when given); with
    `require_all_at_least` every kept ratio must also clear that floor.
    """
    ratios, kept, spread, dropped = _ratio_stats(rows)
    notes = tuple(notes)
    if dropped:
        notes = notes + (f"{dropped} rows excluded (rhs below noise floor)",)
    if not kept:
        constant = float("nan")
        verdict = "fail"
    elif direction == "lower":
        constant = float(np.min(kept))
        verdict = "pass" if (constant > lower_threshold and spread <= spread_bound) else "fail"
    else:
        constant = float(np.max(kept))
        ok = np.isfinite(constant) and spread <= spread_bound
        if upper_cap is not None:
            ok = ok and constant <= upper_cap
        if require_all_at_least is not None:
            ok = ok and float(np.min(kept)) >= require_all_at_least
        verdict = "pass" if ok else "fail"
    table = tuple((i, float(l), float(r)) for i, (l, r) in enumerate(rows))
    return CheckReport(check_id, params_used, table, tuple(ratios), constant,
                       spread, verdict, seed=seed, resolutions=resolutions,
                       notes=notes)


# -- test family ---------------------------------------------------------


def _sawtooth8(x):
    acc = np.zeros_like(x)
    for k in range(1, 9):
        acc = acc + np.sin(k * x) / k
    return acc


def standard_family(size, dim=1, rng=None, names=None):
    """Named test functions spanning smooth, Lipschitz, and rough regimes.

    d=1: cos x; |sin x| (Lipschitz, not C^1); an 8-term sawtooth partial
    sum; a seeded random band-limited function with quadratic mode decay.
    d=2 uses tensor analogues of the same four.  `names` filters the list.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    if dim == 1:
        fam = [
            ("cos", discretize(np.cos, size, 1)),
            ("abs-sin", discretize(lambda x: np.abs(np.sin(x)), size, 1)),
            ("sawtooth8", discretize(_sawtooth8, size, 1)),
            ("random", random_smooth(size, 1, rng)),
        ]
    elif dim == 2:
        fam = [
            ("cos", discretize(lambda x, y: np.cos(x) * np.cos(y), size, 2)),
            ("abs-sin", discretize(lambda x, y: np.abs(np.sin(x) * np.sin(y)), size, 2)),
            ("sawtooth8", discretize(lambda x, y: _sawtooth8(x) + _sawtooth8(y), size, 2)),
            ("random", random_smooth(size, 2, rng)),
        ]
    else:
        raise ValueError(f"grid dimension must be 1 or 2, got {dim}")
    if names is not None:
        wanted = list(names)
        known = {n for n, _ in fam}
        for n in wanted:
            if n not in known:
                raise ValueError(f"unknown family member {n!r}; known: {sorted(known)}")
        fam = [(n, f) for n, f in fam if n in set(wanted)]
    return fam


def dyadic_tail_sum(values_fn, r, s, rel_tol=1e-14, max_terms=64):
    """{sum_{j>=1} 2^(-j*r*s) values_fn(j)^s}^(1/s) with relative truncation.

    Stops at the first term below `rel_tol` times the running sum (terms
    decay geometrically for bounded values) and returns (value, j_stop).
    """
    acc = 0.0
    stop = max_terms
    for j in range(1, max_terms + 1):
        v = max(float(values_fn(j)), 0.0)
        term = 2.0 ** (-j * r * s) * v ** s
        acc += term
        if acc > 0.0 and term < rel_tol * acc:
            stop = j
            break
    return acc ** (1.0 / s), stop


# -- space geometry ------------------------------------------------------


@dataclass(frozen=True)
class ConvexityEstimate:
    """Empirical sharp constant of the s-convexity inequality."""

    m_hat: float
    witness: tuple
    witness_label: str
    trials: int


def estimate_convexity_constant(norm=None, s=2.0, rng=None, trials=200,
                                size=64, dim=1):
    """Smallest observed (max(|F+G|,|F-G|)^s - |F|^s)/|G|^s, clamped at 0.

    Samples mix fixed witness pairs (a flat function against cos, a
    near-parallel pair, disjoint-support bumps) with seeded random pairs
    drawn sequentially, so enlarging `trials` keeps every earlier sample
    and the estimate can only decrease.
    """
    if s < 2.0:
        raise ValueError(f"convexity exponent s must be >= 2, got {s}")
    if trials < 100:
        raise ValueError(f"need at least 100 trials, got {trials}")
    if rng is None or isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(0 if rng is None else int(rng))
    nfun = _as_norm(norm)
    x = 2.0 * np.pi * np.arange(size) / size
    shape = (size,) * dim
    ones = GridFunction(np.ones(shape))
    cosf = discretize(np.cos, size, 1) if dim == 1 else \
        discretize(lambda a, b: np.cos(a), size, 2)
    left = np.zeros(shape)
    right = np.zeros(shape)
    half = (x < np.pi)
    if dim == 1:
        left[half] = 1.0
        right[~half] = 1.0
    else:
        left[half, :] = 1.0
        right[~half, :] = 1.0

    best = float("inf")
    best_pair = None
    best_label = None

    def consider(label, F, G):
        nonlocal best, best_pair, best_label
        ng = nfun(G)
        if ng < 1e-12:
            return
        nf = nfun(F)
        top = max(nfun(F + G), nfun(F - G))
        val = max((top ** s - nf ** s) / ng ** s, 0.0)
        if val < best:
            best, best_pair, best_label = val, (F, G), label

    consider("flat-vs-cos", ones, cosf)
    consider("near-parallel", cosf, 0.01 * cosf)
    consider("disjoint-halves", GridFunction(left), GridFunction(right))
    for k in range(trials):
        mode = k % 3
        F = random_smooth(size, dim, rng)
        if mode == 0:
            G = random_smooth(size, dim, rng)
        elif mode == 1:
            eps = rng.uniform(0.005, 0.1)
            G = eps * F + rng.uniform(0.0, 0.2) * eps * random_smooth(size, dim, rng)
        else:
            mask = left if rng.uniform() < 0.5 else right
            F = GridFunction(F.samples * mask)
            G = GridFunction(random_smooth(size, dim, rng).samples * (1.0 - mask))
        consider(f"random-{k}", F, G)
    return ConvexityEstimate(float(best), best_pair, best_label, trials)


@dataclass(frozen=True)
class SpaceGeometry:
    """Empirical smoothness and convexity moduli of the unit ball."""

    sigma: tuple
    eta: tuple
    eps: tuple
    delta: tuple
    eta_exponent: float
    delta_exponent: float


def space_moduli(norm=None, size=64, dim=1, rng=None, trials=24):
    """Sampled smoothness curve eta and convexity curve delta with power fits.

    eta(sigma) is the largest observed (|F+G|+|F-G|)/2 - 1 over pairs with
    |F| = 1, |G| = sigma; delta(eps) the smallest observed 1 - |phi+psi|/2
    over unit pairs with |phi-psi| = eps.  Both curves are clamped at 0,
    pinned to 0 at the origin, and made nondecreasing; exponents come from
    a log-log fit over the positive part of each grid.
    """
    if rng is None or isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(0 if rng is None else int(rng))
    nfun = _as_norm(norm)
    sigma = np.concatenate([[0.0], np.geomspace(0.02, 0.5, 15)])
    eps = np.concatenate([[0.0], np.geomspace(0.05, 1.0, 15)])

    def unit(g):
        n = nfun(g)
        if n < 1e-14:
            return None
        return (1.0 / n) * g

    base = []
    if dim == 1:
        base.append((discretize(np.cos, size, 1), discretize(np.sin, size, 1)))
        base.append((discretize(lambda x: np.cos(2 * x), size, 1),
                     discretize(np.cos, size, 1)))
    else:
        base.append((discretize(lambda x, y: np.cos(x), size, 2),
                     discretize(lambda x, y: np.sin(x), size, 2)))
        base.append((discretize(lambda x, y: np.cos(x) * np.cos(y), size, 2),
                     discretize(lambda x, y: np.sin(x) * np.sin(y), size, 2)))
    pairs = list(base)
    for _ in range(trials):
        pairs.append((random_smooth(size, dim, rng), random_smooth(size, dim, rng)))
    pairs = [(unit(a), unit(b)) for a, b in pairs]
    pairs = [(a, b) for a, b in pairs if a is not None and b is not None]

    eta = np.zeros_like(sigma)
    for i, sg in enumerate(sigma):
        if sg == 0.0:
            continue
        best = 0.0
        for F, B in pairs:
            G = sg * B
            best = max(best, 0.5 * nfun(F + G) + 0.5 * nfun(F - G) - 1.0)
        eta[i] = max(best, 0.0)
    eta = np.maximum.accumulate(eta)

    delta = np.zeros_like(eps)
    for i, ev in enumerate(eps):
        if ev == 0.0:
            continue
        best = None
        for phi, b in pairs:
            gap = nfun(phi - b)
            if gap < ev - 1e-12:
                continue

            def mix(theta):
                return unit(math.cos(theta) * phi + math.sin(theta) * b)

            lo, hi = 0.0, math.pi / 2.0
            if nfun(phi - mix(hi)) < ev:
                hi = math.pi
                if nfun(phi - mix(hi)) < ev - 1e-9:
                    continue
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if nfun(phi - mix(mid)) < ev:
                    lo = mid
                else:
                    hi = mid
            psi = mix(0.5 * (lo + hi))
            val = max(1.0 - 0.5 * nfun(phi + psi), 0.0)
            if best is None or val < best:
                best = val
        delta[i] = 0.0 if best is None else best
    delta = np.maximum.accumulate(delta)

    def fit(xs, ys):
        good = (xs > 0.0) & (ys > 0.0)
        if np.count_nonzero(good) < 2:
            return float("nan")
        return float(np.polyfit(np.log(xs[good]), np.log(ys[good]), 1)[0])

    return SpaceGeometry(tuple(float(v) for v in sigma), tuple(float(v) for v in eta),
                         tuple(float(v) for v in eps), tuple(float(v) for v in delta),
                         fit(sigma, eta), fit(eps, delta))


def verify_duality(q, dim, rng=None, trials=400, tol=0.01):
    """Two-sided duality check on the finite-dimensional sequence space l_q.

    Estimates the smallest M making (|x+y| + |x-y|)/2 <= (|x|^q + M|y|^q)^(1/q)
    over sampled pairs, predicts the conjugate-space constant
    m = M^(-1/(q-1)) with s = q/(q-1), and verifies on l_s that
    max(|u+v|, |u-v|)^s >= |u|^s + m|v|^s up to 3*tol sampling slack.
    """
    if not (1.0 < q <= 2.0):
        raise ValueError(
            f"smoothness exponent q must lie in (1, 2], got {q}: no nontrivial "
            "norm satisfies the power-type smoothness inequality beyond q = 2")
    if dim < 2:
        raise ValueError(f"need dimension >= 2, got {dim}")
    if rng is None or isinstance(rng, (int, np.integer)):
        seed = 0 if rng is None else int(rng)
        rng = np.random.default_rng(seed)
    else:
        seed = -1
    start = time.perf_counter()
    s = q / (q - 1.0)

    def norm_of(v, expo):
        return float(np.sum(np.abs(v) ** expo) ** (1.0 / expo))

    det_pairs = []
    e0 = np.zeros(dim)
    e1 = np.zeros(dim)
    e0[0] = 1.0
    e1[1] = 1.0
    for scale in (0.1, 0.5, 1.0, 2.0):
        det_pairs.append((e0, scale * e1))

    m_need = 0.0
    for k in range(trials + len(det_pairs)):
        if k < len(det_pairs):
            x, y = det_pairs[k]
        else:
            x = rng.standard_normal(dim)
            y = rng.standard_normal(dim)
        ny = norm_of(y, q)
        if ny < 1e-12:
            continue
        lhs = 0.5 * (norm_of(x + y, q) + norm_of(x - y, q))
        need = (lhs ** q - norm_of(x, q) ** q) / ny ** q
        m_need = max(m_need, need)
    M_hat = max(m_need, 1e-12)
    m_pred = M_hat ** (-1.0 / (q - 1.0))

    rows = []
    for k in range(trials + len(det_pairs)):
        if k < len(det_pairs):
            u, v = det_pairs[k]
        else:
            u = rng.standard_normal(dim)
            v = rng.standard_normal(dim)
        nv = norm_of(v, s)
        if nv < 1e-12:
            continue
        top = max(norm_of(u + v, s), norm_of(u - v, s))
        rows.append((top ** s - norm_of(u, s) ** s, nv ** s))

    ratios, kept, spread, dropped = _ratio_stats(rows)
    constant = float(np.min(kept)) if kept else float("nan")
    verdict = "pass" if (kept and constant >= m_pred - 3.0 * tol) else "fail"
    table = tuple((i, float(l), float(r)) for i, (l, r) in enumerate(rows))
    report = CheckReport(
        "duality", {"q": q, "dim": dim, "trials": trials, "tol": tol},
        table, tuple(ratios), constant, spread, verdict,
        runtime_ms=1000.0 * (time.perf_counter() - start), seed=seed,
        resolutions={"trials": trials},
        notes=(f"M_hat={M_hat:.12g}", f"s={s:.12g}", f"m_pred={m_pred:.12g}",
               "constant = min (max(|u+v|,|u-v|)^s - |u|^s)/|v|^s on l_s"))
    return report


# -- registry helpers ----------------------------------------------------


def _parse_norm(params):
    norm = params.get("norm")
    if norm is None:
        return NormSpec()
    if isinstance(norm, NormSpec):
        return norm
    if isinstance(norm, dict):
        return NormSpec.from_json(norm)
    raise ValueError(f"norm must be a NormSpec or a JSON record, got {type(norm).__name__}")


def _parse_phi(params, default_fn):
    phi = params.get("phi")
    if phi is None:
        return default_fn()
    if isinstance(phi, dict):
        return YoungFunction.from_json(phi)
    return phi


def _parse_family(params, size, dim, rng):
    if "f" in params:
        f = params["f"]
        if isinstance(f, dict):
            f = GridFunction.from_json(f)
        return [("custom", f)]
    return standard_family(size, dim, rng, names=params.get("family"))


def _common(params, default_d=1, default_size=256):
    size = int(params.get("N", params.get("size", default_size)))
    d = int(params.get("d", default_d))
    spec = _parse_norm(params)
    nfun = _as_norm(spec)
    s = float(params.get("s", spec.s if spec.s is not None else 2.0))
    r = int(params.get("r", 1))
    seed = int(params.get("seed", 0))
    rng = np.random.default_rng(seed)
    spread_bound = float(params.get("spread_bound", 10.0))
    return size, d, spec, nfun, s, r, seed, rng, spread_bound


def _n_range(params, default_hi, default_lo=1):
    rng_param = params.get("n_range")
    if rng_param is None:
        return range(default_lo, default_hi + 1)
    lo, hi = int(rng_param[0]), int(rng_param[1])
    return range(lo, hi + 1)


# -- check runners -------------------------------------------------------


def _run_basic_21(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    semigroup = params.get("semigroup", "shift")
    h = float(params.get("h", params.get("t", 0.3)))
    L = int(params.get("L", 10))
    m = params.get("m")
    tol = float(params.get("tol", 0.02))
    fam = _parse_family(params, size, d, rng)
    rows = []
    for _, f in fam:
        lhs = nfun(_one_parameter_difference(f, h, semigroup, r, None))
        acc = 0.0
        for j in range(0, L + 1):
            term = nfun(_one_parameter_difference(f, (2.0 ** j) * h, semigroup, r + 1, None))
            acc += 2.0 ** (-j * r * s) * term ** s
        rows.append((lhs, acc ** (1.0 / s)))
    threshold = (float(m) ** (1.0 / s) / 2.0 - tol) if m is not None else 0.0
    used = {"norm": spec.to_json(), "semigroup": semigroup, "h": h, "r": r,
            "s": s, "L": L, "m": m, "tol": tol, "N": size, "d": d}
    notes = ("rows indexed by test function: " + ", ".join(n for n, _ in fam),
             "constant = min |(T-I)^r f| / {sum_{j=0}^L 2^(-jrs)|(T^(2^j)-I)^(r+1)f|^s}^(1/s)")
    if m is not None:
        notes = notes + (f"threshold m^{{1/s}}/2 - tol = {threshold:.6g}",)
    return _finish("basic-2.1", used, rows, "lower", bound, seed,
                   {"N": size, "L": L}, notes, lower_threshold=threshold)


def _run_jackson_14(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    n_rng = _n_range(params, 8)
    radii = int(params.get("radii", 64 if d == 1 else 16))
    directions = int(params.get("directions", 64 if d == 1 else 8))
    fam = _parse_family(params, size, d, rng)
    rows = []
    for _, f in fam:
        hi = max(n_rng)
        om_hi = {j: modulus(f, r + 1, 2.0 ** (-j), nfun, directions, radii)
                 for j in range(1, hi + 1)}
        for n in n_rng:
            agg = sum(2.0 ** (j * r * s) * om_hi[j] ** s for j in range(1, n + 1))
            lhs = 2.0 ** (-n * r) * agg ** (1.0 / s)
            rhs = modulus(f, r, 2.0 ** (-n), nfun, directions, radii)
            rows.append((lhs, rhs))
    used = {"norm": spec.to_json(), "r": r, "s": s, "n_range": [min(n_rng), max(n_rng)],
            "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             "constant = max 2^(-nr){sum_{j<=n} 2^(jrs) omega^{r+1}(f,2^-j)^s}^(1/s) / omega^r(f,2^-n)")
    return _finish("jackson-1.4", used, rows, "upper", bound, seed,
                   {"N": size, "radii": radii, "directions": directions}, notes)


def _run_jackson_48(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    n_rng = _n_range(params, 6)
    fam = _parse_family(params, size, d, rng)
    rows = []
    jmax = 0
    for _, f in fam:
        for n in n_rng:
            t = 2.0 ** (-n)
            lhs = k_delta(f, r, t, nfun)
            rhs, stop = dyadic_tail_sum(
                lambda j: k_delta(f, r + 1, (2.0 ** j) * t, nfun), r, s)
            jmax = max(jmax, stop)
            rows.append((lhs, rhs))
    used = {"norm": spec.to_json(), "r": r, "s": s,
            "n_range": [min(n_rng), max(n_rng)], "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             f"series truncated at j <= {jmax}",
             "heat K-functional route: K_rho(f, u^rho) computed as |(W(u)-I)^rho f|")
    return _finish("jackson-4.8", used, rows, "lower", bound, seed,
                   {"N": size, "max_j": jmax}, notes)


def _run_jackson_49(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    n_rng = _n_range(params, 6)
    fam = _parse_family(params, size, d, rng)
    rows = []
    jmax = 0
    for _, f in fam:
        for n in n_rng:
            t = 2.0 ** (-n)
            lhs = k_delta(f, r, t, nfun)

            def term(j):
                lam = ((2.0 ** j) * t) ** -0.5
                return best_approx(f, degree_below(lam), nfun).value

            rhs, stop = dyadic_tail_sum(term, r, s)
            jmax = max(jmax, stop)
            rows.append((lhs, rhs))
    used = {"norm": spec.to_json(), "r": r, "s": s,
            "n_range": [min(n_rng), max(n_rng)], "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             f"series truncated at j <= {jmax}",
             "lower bound of the heat K-functional by best-approximation errors "
             "at lambda_j = (2^j t)^(-1/2)")
    return _finish("jackson-4.9", used, rows, "lower", bound, seed,
                   {"N": size, "max_j": jmax}, notes)


def _run_jackson_59(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    if d != 1:
        raise ValueError("the abel-semigroup checks run on 1-d grids")
    n_rng = _n_range(params, 6)
    fam = _parse_family(params, size, d, rng)
    rows = []
    jmax = 0
    for _, f in fam:
        for n in n_rng:
            t = 2.0 ** (-n)
            lhs = nfun(semigroup_difference(f, t, "abel", r))
            rhs, stop = dyadic_tail_sum(
                lambda j: nfun(semigroup_difference(f, (2.0 ** j) * t, "abel", r + 1)),
                r, s)
            jmax = max(jmax, stop)
            rows.append((lhs, rhs))
    used = {"norm": spec.to_json(), "r": r, "s": s,
            "n_range": [min(n_rng), max(n_rng)], "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             f"series truncated at j <= {jmax}",
             "abel K-functional route: K_rho(f, u^rho) computed as |(T(u)-I)^rho f|")
    return _finish("jackson-5.9", used, rows, "lower", bound, seed,
                   {"N": size, "max_j": jmax}, notes)


def _run_jackson_510(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    if d != 1:
        raise ValueError("the abel-semigroup checks run on 1-d grids")
    n_rng = _n_range(params, 8)
    fam = _parse_family(params, size, d, rng)
    rows = []
    for _, f in fam:
        approx_cache = {}
        for n in n_rng:
            t = 2.0 ** (-n)
            lhs = nfun(semigroup_difference(f, t, "abel", r))
            acc = 0.0
            for j in range(1, n + 1):
                deg = 2 ** (n - j)
                if deg not in approx_cache:
                    approx_cache[deg] = best_approx(f, deg, nfun).value
                acc += 2.0 ** (-j * r * s) * approx_cache[deg] ** s
            rows.append((lhs, acc ** (1.0 / s)))
    used = {"norm": spec.to_json(), "r": r, "s": s,
            "n_range": [min(n_rng), max(n_rng)], "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             "constant = min |(T(2^-n)-I)^r f| / {sum_{j<=n} 2^(-jrs) E_{2^(n-j)}(f)^s}^(1/s)")
    return _finish("jackson-5.10", used, rows, "lower", bound, seed,
                   {"N": size}, notes)


def _run_entire_412(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    k_hi = int(params.get("lambda_power_max", 6))
    fam = _parse_family(params, size, d, rng)
    rows = []
    for _, f in fam:
        for k in range(0, k_hi + 1):
            lam = 2.0 ** k
            lhs = best_approx(f, degree_below(lam), nfun).value
            rhs = k_delta(f, r, lam ** -2.0, nfun)
            rows.append((lhs, rhs))
    used = {"norm": spec.to_json(), "r": r, "lambda_power_max": k_hi,
            "N": size, "d": d}
    notes = ("rows ordered by (function, k) with lambda = 2^k; functions: "
             + ", ".join(n for n, _ in fam),
             "constant = max E_lambda(f) / K_r(f, lambda^(-2r)) (heat route)")
    return _finish("entire-4.12", used, rows, "upper", bound, seed,
                   {"N": size}, notes)


def _run_cesaro_51(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    if d != 1:
        raise ValueError("cesaro means run on 1-d grids")
    phi = _parse_phi(params, lambda: zygmund(2.0, 0.5))
    ell = int(params.get("ell", 1))
    degree = int(params.get("n", 16))
    slack = float(params.get("slack", 1e-10))
    fam = _parse_family(params, size, d, rng)
    rows = []
    for _, f in fam:
        smooth = cesaro(f, degree, ell)
        rows.append((luxemburg_norm(smooth, phi), luxemburg_norm(f, phi)))
        rows.append((orlicz_norm(smooth, phi), orlicz_norm(f, phi)))
    used = {"phi": phi.to_json(), "ell": ell, "n": degree, "N": size, "d": d,
            "slack": slack}
    notes = ("row pairs per function (luxemburg then orlicz); functions: "
             + ", ".join(n for n, _ in fam),
             "contraction check: constant = max |C_n^ell f| / |f| must stay <= 1 + slack")
    return _finish("cesaro-5.1", used, rows, "upper", bound, seed,
                   {"N": size}, notes, upper_cap=1.0 + slack)


def _run_averaged_73(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    semigroup = params.get("semigroup", "shift")
    points = int(params.get("points", 64))
    quad_points = int(params.get("quad_points", 128))
    t_grid = [float(t) for t in params.get("t_grid", (0.25, 0.5, 1.0, 2.0, 3.0))]
    slack = float(params.get("slack", 1e-10))
    fam = _parse_family(params, size, d, rng)
    rows = []
    for _, f in fam:
        for t in t_grid:
            om = semigroup_modulus(f, r, t, semigroup, nfun, points=points)
            w = averaged_modulus(f, r, t, semigroup, nfun, quad_points=quad_points)
            rows.append((om, w))
    used = {"norm": spec.to_json(), "semigroup": semigroup, "r": r,
            "t_grid": t_grid, "N": size, "d": d}
    notes = ("rows ordered by (function, t); functions: " + ", ".join(n for n, _ in fam),
             "bracket check: every ratio omega/w must be >= 1 - slack; "
             "constant = max ratio is the empirical C(r)")
    return _finish("averaged-7.3", used, rows, "upper", bound, seed,
                   {"N": size, "points": points, "quad_points": quad_points},
                   notes, require_all_at_least=1.0 - slack)


def _run_semigroup_74(params, check_id="semigroup-7.4", default_semigroup="abel"):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    semigroup = params.get("semigroup", default_semigroup)
    points = int(params.get("points", 32))
    n_rng = _n_range(params, 5)
    fam = _parse_family(params, size, d, rng)
    rows = []
    jmax = 0
    for _, f in fam:
        for n in n_rng:
            t = 2.0 ** (-n)
            lhs = semigroup_modulus(f, r, t, semigroup, nfun, points=points)
            rhs, stop = dyadic_tail_sum(
                lambda j: semigroup_modulus(f, r + 1, (2.0 ** j) * t, semigroup,
                                            nfun, points=points),
                r, s)
            jmax = max(jmax, stop)
            rows.append((lhs, rhs))
    used = {"norm": spec.to_json(), "semigroup": semigroup, "r": r, "s": s,
            "n_range": [min(n_rng), max(n_rng)], "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             f"series truncated at j <= {jmax}",
             "constant = min omega_T^r(f,t) / {sum_j 2^(-jrs) omega_T^{r+1}(f,2^j t)^s}^(1/s)")
    return _finish(check_id, used, rows, "lower", bound, seed,
                   {"N": size, "points": points, "max_j": jmax}, notes)


def _run_shift_75(params):
    return _run_semigroup_74(params, check_id="shift-7.5", default_semigroup="shift")


def _run_kfunc_89(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params, default_d=2)
    ell = int(params.get("ell", 1))
    if 2 * ell <= r:
        raise ValueError(f"need 2*ell > r, got ell={ell}, r={r}")
    route = params.get("route", "realization")
    n_rng = _n_range(params, 4)
    radii = int(params.get("radii", 64 if d == 1 else 16))
    directions = int(params.get("directions", 64 if d == 1 else 8))
    fam = _parse_family(params, size, d, rng)
    rows = []
    jmax = 0
    for _, f in fam:
        for n in n_rng:
            t = 2.0 ** (-n)
            lhs = modulus(f, r, t, nfun, directions, radii)
            rhs, stop = dyadic_tail_sum(
                lambda j: k_functional(f, ell, (2.0 ** j) * t, nfun, route=route).value,
                r, s)
            jmax = max(jmax, stop)
            rows.append((lhs, rhs))
    used = {"norm": spec.to_json(), "r": r, "s": s, "ell": ell, "route": route,
            "n_range": [min(n_rng), max(n_rng)], "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             f"series truncated at j <= {jmax}",
             "constant = min omega^r(f,t) / {sum_j 2^(-jrs) K_ell(f,(2^j t)^(2 ell))^s}^(1/s)")
    return _finish("kfunc-8.9", used, rows, "lower", bound, seed,
                   {"N": size, "radii": radii, "directions": directions,
                    "max_j": jmax}, notes)


def _run_jackson_810(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    n_rng = _n_range(params, 6)
    radii = int(params.get("radii", 64 if d == 1 else 16))
    directions = int(params.get("directions", 64 if d == 1 else 8))
    fam = _parse_family(params, size, d, rng)
    rows = []
    jmax = 0
    for _, f in fam:
        cache = {}
        for n in n_rng:
            t = 2.0 ** (-n)
            lhs = modulus(f, r, t, nfun, directions, radii)

            def term(j):
                deg = degree_below(1.0 / (t * 2.0 ** j))
                if deg not in cache:
                    cache[deg] = best_approx(f, deg, nfun).value
                return cache[deg]

            rhs, stop = dyadic_tail_sum(term, r, s)
            jmax = max(jmax, stop)
            rows.append((lhs, rhs))
    used = {"norm": spec.to_json(), "r": r, "s": s,
            "n_range": [min(n_rng), max(n_rng)], "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             f"series truncated at j <= {jmax}",
             "constant = min omega^r(f,t) / {sum_j 2^(-jrs) E_{1/(t 2^j)}(f)^s}^(1/s)")
    return _finish("jackson-8.10", used, rows, "lower", bound, seed,
                   {"N": size, "radii": radii, "directions": directions,
                    "max_j": jmax}, notes)


def _run_lower_812(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    n_rng = _n_range(params, 5)
    radii = int(params.get("radii", 64 if d == 1 else 16))
    directions = int(params.get("directions", 64 if d == 1 else 8))
    fam = _parse_family(params, size, d, rng)
    rows = []
    for _, f in fam:
        for n in n_rng:
            t = 2.0 ** (-n)
            L = max(1, math.ceil(math.log2(1.0 / t) - 1e-9))
            lhs = modulus(f, r, t, nfun, directions, radii)
            acc = 0.0
            for j in range(1, L + 1):
                om = modulus(f, r + 1, t * 2.0 ** j, nfun, directions, radii)
                acc += 2.0 ** (-j * r * s) * om ** s
            rows.append((lhs, acc ** (1.0 / s)))
    used = {"norm": spec.to_json(), "r": r, "s": s,
            "n_range": [min(n_rng), max(n_rng)], "N": size, "d": d}
    notes = ("rows ordered by (function, n); functions: " + ", ".join(n for n, _ in fam),
             "constant = min omega^r(f,t) / {sum_{j<=L} 2^(-jrs) omega^{r+1}(f,t 2^j)^s}^(1/s), "
             "L = min(l: 2^-l <= t)")
    return _finish("lower-8.12", used, rows, "lower", bound, seed,
                   {"N": size, "radii": radii, "directions": directions}, notes)


def _run_orlicz_sandwich(params):
    size, d, spec, nfun, s, r, seed, rng, bound = _common(params)
    phi = _parse_phi(params, lambda: zygmund(2.0, 0.5))
    slack = float(params.get("slack", 1e-8))
    fam = _parse_family(params, size, d, rng)
    rows = []
    for _, f in fam:
        rows.append((orlicz_norm(f, phi), luxemburg_norm(f, phi)))
    used = {"phi": phi.to_json(), "N": size, "d": d, "slack": slack}
    notes = ("rows indexed by test function: " + ", ".join(n for n, _ in fam),
             "sandwich check: every ratio orlicz/luxemburg must lie in [1 - slack, 2 + slack]")
    return _finish("orlicz-sandwich", used, rows, "upper", bound, seed,
                   {"N": size}, notes, upper_cap=2.0 + slack,
                   require_all_at_least=1.0 - slack)


_CHECKS = {
    "basic-2.1": (_run_basic_21,
                  "|(T-I)^r f| >= m1 {sum_{j>=0} 2^(-jrs) |(T^(2^j)-I)^(r+1) f|^s}^(1/s) "
                  "with proof constant m1 = m^{1/s}/2"),
    "jackson-1.4": (_run_jackson_14,
                    "2^(-nr) {sum_{j<=n} 2^(jrs) omega^{r+1}(f,2^-j)^s}^(1/s) "
                    "<= C omega^r(f,2^-n)"),
    "jackson-4.8": (_run_jackson_48,
                    "K_r(f,t^r) >= C {sum_j 2^(-jrs) K_{r+1}(f,(2^j t)^{r+1})^s}^(1/s) "
                    "for the heat K-functional"),
    "jackson-4.9": (_run_jackson_49,
                    "K_r(f,t^r) >= C {sum_j 2^(-jrs) E_{(2^j t)^(-1/2)}(f)^s}^(1/s) "
                    "for the heat K-functional"),
    "jackson-5.9": (_run_jackson_59,
                    "K_r(f,t^r) >= C {sum_j 2^(-jrs) K_{r+1}(f,(2^j t)^{r+1})^s}^(1/s) "
                    "for the abel K-functional on the circle"),
    "jackson-5.10": (_run_jackson_510,
                     "K_r(f,2^(-nr)) >= C {sum_{j<=n} 2^(-jrs) E_{2^(n-j)}(f)^s}^(1/s) "
                     "for the abel K-functional on the circle"),
    "entire-4.12": (_run_entire_412,
                    "E_lambda(f) <= C K_r(f, lambda^(-2r)) for the heat K-functional"),
    "cesaro-5.1": (_run_cesaro_51,
                   "Cesaro means C_n^ell are a contraction in the Luxemburg and "
                   "Orlicz norms"),
    "averaged-7.3": (_run_averaged_73,
                     "w_T^r(f,t) <= omega_T^r(f,t) <= C(r) w_T^r(f,t) for the "
                     "averaged and one-sided semigroup moduli"),
    "semigroup-7.4": (_run_semigroup_74,
                      "omega_T^r(f,t) >= C {sum_j 2^(-jrs) omega_T^{r+1}(f,2^j t)^s}^(1/s) "
                      "for a contraction semigroup"),
    "shift-7.5": (_run_shift_75,
                  "omega_T^r(f,t) >= C {sum_j 2^(-jrs) omega_T^{r+1}(f,2^j t)^s}^(1/s) "
                  "for the shift semigroup on the circle"),
    "kfunc-8.9": (_run_kfunc_89,
                  "omega^r(f,t) >= C {sum_j 2^(-jrs) K_ell(f,(2^j t)^(2 ell))^s}^(1/s), "
                  "2 ell > r"),
    "jackson-8.10": (_run_jackson_810,
                     "omega^r(f,t) >= C {sum_j 2^(-jrs) E_{1/(t 2^j)}(f)^s}^(1/s)"),
    "lower-8.12": (_run_lower_812,
                   "omega^r(f,t)^s >= C sum_{j<=L} 2^(-jrs) omega^{r+1}(f,t 2^j)^s, "
                   "L = min(l: 2^-l <= t)"),
    "orlicz-sandwich": (_run_orlicz_sandwich,
                        "luxemburg <= orlicz <= 2 luxemburg on the test family"),
}


def registry_ids():
    """Registered check ids in canonical order."""
    return tuple(_CHECKS.keys())


def describe_check(check_id):
    """Formula, parameters, and defaults for one registered check."""
    if check_id not in _CHECKS:
        raise ValueError(f"unknown check id {check_id!r}; known ids: "
                         + ", ".join(_CHECKS))
    _, summary = _CHECKS[check_id]
    lines = [f"{check_id}: {summary}"]
    common = ("common params: N (grid size), d (dimension), norm (JSON record), "
              "r, s, seed, family (names), n_range [lo, hi], spread_bound")
    extra = {
        "basic-2.1": "extra params: semigroup (shift|heat|abel), h (base step, 0.3), "
                     "L (tail length, 10), m (sharp constant; sets the pass "
                     "threshold m^{1/s}/2 - tol), tol (0.02)",
        "cesaro-5.1": "extra params: phi (Young record), ell (1), n (degree, 16), "
                      "slack (1e-10); verdict requires the contraction ratio <= 1 + slack",
        "averaged-7.3": "extra params: semigroup (shift), t_grid, points (64), "
                        "quad_points (128), slack (1e-10)",
        "semigroup-7.4": "extra params: semigroup (abel), points (32)",
        "shift-7.5": "extra params: points (32)",
        "kfunc-8.9": "extra params: ell (1), route (realization|heat|sphere), "
                     "radii, directions",
        "jackson-8.10": "extra params: radii, directions",
        "lower-8.12": "extra params: radii, directions",
        "entire-4.12": "extra params: lambda_power_max (6)",
        "orlicz-sandwich": "extra params: phi (Young record), slack (1e-8)",
    }
    lines.append(common)
    if check_id in extra:
        lines.append(extra[check_id])
    return "\n".join(lines)


def run_check(check_id, params=None):
    """Run one registered check and return its CheckReport."""
    if check_id not in _CHECKS:
        raise ValueError(f"unknown check id {check_id!r}; known ids: "
                         + ", ".join(_CHECKS))
    runner, _ = _CHECKS[check_id]
    params = dict(params or {})
    start = time.perf_counter()
    report = runner(params)
    report.runtime_ms = 1000.0 * (time.perf_counter() - start)
    return report
