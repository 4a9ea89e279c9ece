"""Fourier multipliers, smoothing semigroups, and moduli of smoothness."""

import math

import numpy as np
import pytest
from scipy.special import j0

from jacksonlab import (GridFunction, NormSpec, OperatorSpec, averaged_modulus,
                        cesaro, cesaro_weights, coeffs, difference, discretize,
                        grid_points, laplacian_power, lp_norm, luxemburg_norm,
                        modulus, power, random_smooth, semigroup_difference,
                        semigroup_modulus, spectral_semigroup, spherical_mean,
                        synthesize, translate, zygmund)

SQRT2 = math.sqrt(2.0)


def test_coeffs_synthesize_round_trip():
    rng = np.random.default_rng(0)
    for dim in (1, 2):
        f = random_smooth(32, dim, rng)
        back = synthesize(coeffs(f))
        assert np.allclose(back.samples, f.samples, atol=1e-13)


def test_translate_matches_shifted_samples():
    f = discretize(np.cos, 64, 1)
    (x,) = grid_points(64, 1)
    g = translate(f, 0.3)
    assert np.allclose(g.samples, np.cos(x + 0.3), atol=1e-12)
    h = discretize(lambda a, b: np.sin(a + 2.0 * b), 32, 2)
    xx, yy = grid_points(32, 2)
    moved = translate(h, (0.4, -0.1))
    assert np.allclose(moved.samples, np.sin(xx + 0.4 + 2.0 * (yy - 0.1)), atol=1e-12)


def test_translate_keeps_nyquist_real():
    size = 16
    f = GridFunction((-1.0) ** np.arange(size).astype(float))
    g = translate(f, 0.37)
    assert np.isrealobj(g.samples)
    assert np.allclose(g.samples, math.cos(0.5 * size * 0.37) * f.samples, atol=1e-12)


def test_difference_oracle_on_cos():
    f = discretize(np.cos, 128, 1)
    for h in (0.2, 0.7):
        for r in (1, 2, 3):
            got = lp_norm(difference(f, h, r), 2.0)
            assert got == pytest.approx((2.0 * math.sin(h / 2.0)) ** r / SQRT2,
                                        rel=1e-12)


def test_semigroup_law():
    rng = np.random.default_rng(1)
    for kind in ("heat", "abel"):
        for dim in (1, 2):
            f = random_smooth(32, dim, rng)
            a = spectral_semigroup(spectral_semigroup(f, 0.2, kind), 0.5, kind)
            b = spectral_semigroup(f, 0.7, kind)
            assert np.max(np.abs(a.samples - b.samples)) < 1e-12


def test_heat_and_abel_on_cos():
    f = discretize(np.cos, 64, 1)
    for t in (0.25, 1.0):
        heat = spectral_semigroup(f, t, "heat")
        assert np.allclose(heat.samples, math.exp(-t) * f.samples, atol=1e-13)
        abel = spectral_semigroup(f, t, "abel")
        assert np.allclose(abel.samples, math.exp(-t) * f.samples, atol=1e-13)
    # mode 2 separates the two kernels: exp(-4t) vs exp(-2t)
    g = discretize(lambda x: np.cos(2.0 * x), 64, 1)
    assert np.allclose(spectral_semigroup(g, 0.5, "heat").samples,
                       math.exp(-2.0) * g.samples, atol=1e-13)
    assert np.allclose(spectral_semigroup(g, 0.5, "abel").samples,
                       math.exp(-1.0) * g.samples, atol=1e-13)


def test_semigroup_difference_matches_composition():
    f = discretize(np.cos, 64, 1)
    t = 0.3
    direct = semigroup_difference(f, t, "heat", 2)
    step = spectral_semigroup(f, t, "heat") - f
    twice = spectral_semigroup(step, t, "heat") - step
    assert np.allclose(direct.samples, twice.samples, atol=1e-13)


def test_contractions_in_lp_and_luxemburg():
    rng = np.random.default_rng(7)
    phi = zygmund(2.0, 0.5)
    for _ in range(10):
        f = random_smooth(128, 1, rng)
        smoothed = [spectral_semigroup(f, 0.4, "heat"),
                    spectral_semigroup(f, 0.4, "abel"),
                    cesaro(f, 8, 1)]
        for g in smoothed:
            for p in (1.0, 2.0, 4.0):
                assert lp_norm(g, p) <= lp_norm(f, p) * (1.0 + 1e-10)
            assert luxemburg_norm(g, phi) <= luxemburg_norm(f, phi) * (1.0 + 1e-10)
    f2 = random_smooth(32, 2, rng)
    v = spherical_mean(f2, 0.5)
    for p in (1.0, 2.0):
        assert lp_norm(v, p) <= lp_norm(f2, p) * (1.0 + 1e-10)


def test_fejer_kernel_nonnegative():
    size = 128
    spike = np.zeros(size)
    spike[0] = float(size)
    kernel = cesaro(GridFunction(spike), 20, 1)
    assert np.min(kernel.samples) >= -1e-12


def test_cesaro_oracle_and_weights():
    w = cesaro_weights(2, 1)
    assert np.allclose(w, [1.0, 2.0 / 3.0, 1.0 / 3.0])
    f = discretize(np.cos, 64, 1)
    assert np.allclose(cesaro(f, 2, 1).samples, (2.0 / 3.0) * f.samples, atol=1e-14)
    with pytest.raises(ValueError):
        cesaro(f, 40, 1)


def test_operator_identity_links_steps():
    # (T(h)-I)^r equals the alternating combination
    # sum_k (-1)^k C(r,k) {T(kh)(T(ks)-I)^r - (T(h+ks)-I)^r}
    rng = np.random.default_rng(9)
    h, s = 0.3, 0.17

    def T(g, u, kind):
        return translate(g, u) if kind == "shift" else spectral_semigroup(g, u, kind)

    def diff_r(g, u, kind, r):
        return difference(g, u, r) if kind == "shift" \
            else semigroup_difference(g, u, kind, r)

    for kind in ("shift", "heat", "abel"):
        for r in (1, 2, 3):
            for _ in range(5):
                f = random_smooth(64, 1, rng)
                lhs = diff_r(f, h, kind, r)
                acc = np.zeros(64)
                for k in range(1, r + 1):
                    termA = T(diff_r(f, k * s, kind, r), k * h, kind)
                    termB = diff_r(f, h + k * s, kind, r)
                    acc = acc + (-1.0) ** k * math.comb(r, k) * (termA.samples - termB.samples)
                assert np.max(np.abs(lhs.samples - acc)) < 1e-10


def test_laplacian_power():
    f = discretize(np.cos, 64, 1)
    assert np.allclose(laplacian_power(f, 1).samples, -f.samples, atol=1e-12)
    g = discretize(lambda x, y: np.cos(x) * np.cos(y), 32, 2)
    assert np.allclose(laplacian_power(g, 1).samples, -2.0 * g.samples, atol=1e-12)
    assert np.allclose(laplacian_power(g, 2).samples, 4.0 * g.samples, atol=1e-11)


def test_spherical_mean_preserves_constants_exactly():
    one = GridFunction(np.ones((64, 64)))
    for t in (0.3, 0.7, 2.0):
        out = spherical_mean(one, t)
        assert np.max(np.abs(out.samples - 1.0)) == 0.0


def test_spherical_mean_bessel_oracle():
    f = discretize(lambda x, y: np.cos(x), 64, 2)
    for t in (0.4, 0.9, 1.7):
        got = spherical_mean(f, t)
        assert np.allclose(got.samples, j0(t) * f.samples, atol=1e-8)


def test_spherical_mean_higher_order_reproduces_smooth_modes_better():
    f = discretize(lambda x, y: np.cos(x), 64, 2)
    t = 0.5
    err1 = np.max(np.abs(spherical_mean(f, t, 1).samples - f.samples))
    err2 = np.max(np.abs(spherical_mean(f, t, 2).samples - f.samples))
    assert err2 < err1


def test_modulus_oracle_first_and_second_order():
    f = discretize(np.cos, 256, 1)
    for t in (0.1, 0.5, 1.0, 2.0, 3.0):
        got = modulus(f, 1, t)
        assert got == pytest.approx(SQRT2 * math.sin(t / 2.0), abs=1e-9)
        got2 = modulus(f, 2, t)
        assert got2 == pytest.approx(2.0 * SQRT2 * math.sin(t / 2.0) ** 2, abs=1e-9)


def test_modulus_2d_picks_best_direction():
    f = discretize(lambda x, y: np.cos(x), 64, 2)
    got = modulus(f, 1, 0.8, directions=64, radii=32)
    assert got == pytest.approx(SQRT2 * math.sin(0.4), rel=1e-6)


def test_modulus_monotone_in_t_and_r_bound():
    f = discretize(lambda x: np.abs(np.sin(x)), 256, 1)
    vals = [modulus(f, 1, t) for t in (0.25, 0.5, 1.0, 2.0)]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    # second order never exceeds twice the first order
    assert modulus(f, 2, 0.5) <= 2.0 * modulus(f, 1, 0.5) + 1e-12


def test_one_sided_semigroup_modulus_shift_matches_two_sided_for_even():
    f = discretize(np.cos, 256, 1)
    for t in (0.5, 1.5):
        one_sided = semigroup_modulus(f, 1, t, "shift")
        assert one_sided == pytest.approx(SQRT2 * math.sin(t / 2.0), abs=1e-9)


def test_averaged_modulus_closed_form():
    f = discretize(np.cos, 256, 1)
    for t in (0.5, 1.0, 3.0):
        got = averaged_modulus(f, 1, t, "shift", quad_points=2048)
        want = (2.0 * SQRT2 / t) * (1.0 - math.cos(t / 2.0))
        assert got == pytest.approx(want, abs=1e-6)


def test_averaged_below_one_sided():
    rng = np.random.default_rng(2)
    f = random_smooth(128, 1, rng)
    for sg in ("shift", "heat", "abel"):
        for r in (1, 2):
            w = averaged_modulus(f, r, 0.7, sg)
            om = semigroup_modulus(f, r, 0.7, sg)
            assert w <= om * (1.0 + 1e-10)


def test_heat_semigroup_modulus_oracle():
    f = discretize(np.cos, 64, 1)
    t = 0.8
    got = semigroup_modulus(f, 1, t, "heat")
    assert got == pytest.approx((1.0 - math.exp(-t)) / SQRT2, rel=1e-12)


def test_operator_spec_round_trip_and_apply():
    f = discretize(np.cos, 64, 1)
    f2 = discretize(lambda x, y: np.cos(x) * np.cos(y), 32, 2)
    specs = [
        (OperatorSpec(kind="shift", h=0.3), f, translate(f, 0.3)),
        (OperatorSpec(kind="heat", t=0.4), f, spectral_semigroup(f, 0.4, "heat")),
        (OperatorSpec(kind="abel", t=0.4), f, spectral_semigroup(f, 0.4, "abel")),
        (OperatorSpec(kind="cesaro", n=4, ell=1), f, cesaro(f, 4, 1)),
        (OperatorSpec(kind="lap", ell=1), f, laplacian_power(f, 1)),
        (OperatorSpec(kind="sphmean", t=0.5, ell=1), f2, spherical_mean(f2, 0.5)),
    ]
    for spec, fn, want in specs:
        got = spec.apply(fn)
        assert np.allclose(got.samples, want.samples, atol=1e-12), spec.kind
        back = OperatorSpec.from_json(spec.to_json())
        assert back == spec
        assert "op" in spec.to_json()
    with pytest.raises(ValueError):
        OperatorSpec(kind="mystery")


def test_modulus_rejects_bad_order():
    f = discretize(np.cos, 32, 1)
    with pytest.raises(ValueError):
        difference(f, 0.3, 0)
    with pytest.raises(ValueError):
        spectral_semigroup(f, 0.3, "unknown")
