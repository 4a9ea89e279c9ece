"""Conjugation, growth conditions, concavity regions, and the patch."""

import math

import numpy as np
import pytest

from jacksonlab import (YoungFunction, builtin, check_delta2, check_nabla2,
                        complementary, exp_growth, log_power,
                        log_power_tail_threshold, patch, power,
                        power_concavity_regions, two_power, zygmund)


def power_conjugate(p, y):
    # sup_x (x*y - x**p), attained at x = (y/p)**(1/(p-1))
    if y <= 0.0:
        return 0.0
    return (p - 1.0) * (y / p) ** (p / (p - 1.0))


def test_builtin_values():
    assert power(2.0)(3.0) == pytest.approx(9.0)
    phi = two_power(1.5, 3.0)
    assert phi(0.25) == pytest.approx(0.25 ** 1.5)
    assert phi(2.0) == pytest.approx(8.0)
    assert zygmund(2.0, 0.5)(1.0) == pytest.approx(math.log(3.0))
    assert log_power(3.0)(math.e) == pytest.approx(math.e ** 3 * 2.0)
    assert exp_growth()(1.0) == pytest.approx(math.e - 2.0)
    assert power(2.0)(0.0) == 0.0


def test_builtin_convexity_and_derivatives():
    for phi in (power(1.5), two_power(1.5, 3.0), zygmund(2.0, 0.5),
                log_power(3.0), exp_growth()):
        # exp growth overflows past ~700, keep its grid modest
        hi = 30.0 if phi.kind == "exp" else 1e3
        grid = np.geomspace(1e-3, hi, 400)
        vals = np.asarray(phi(grid))
        assert np.all(np.diff(vals) > 0.0)
        # chords sit above the graph at interior points
        mid = phi(0.5 * (grid[:-1] + grid[1:]))
        assert np.all(mid <= 0.5 * (vals[:-1] + vals[1:]) + 1e-12 * vals[1:])
        dp = np.asarray(phi.deriv_plus(grid))
        dm = np.asarray(phi.deriv_minus(grid))
        assert np.all(dp >= dm - 1e-12 * np.abs(dp))


def test_conjugate_of_square():
    psi = complementary(power(2.0))
    assert psi(2.0) == pytest.approx(1.0, abs=1e-6)
    ys = np.geomspace(0.05, 20.0, 40)
    expect = np.array([power_conjugate(2.0, y) for y in ys])
    got = np.asarray(psi(ys))
    assert np.max(np.abs(got - expect) / np.maximum(expect, 1e-12)) < 1e-6


def test_conjugate_of_general_powers():
    for p in (1.5, 3.0, 4.0):
        psi = complementary(power(p))
        for y in (0.1, 0.7, 1.0, 3.0, 10.0):
            assert psi(y) == pytest.approx(power_conjugate(p, y), rel=1e-6)


def test_double_conjugation_recovers_builtins():
    grid = np.geomspace(0.01, 10.0, 60)
    for phi in (power(2.0), power(3.0), two_power(1.5, 3.0),
                zygmund(2.0, 0.5), log_power(3.0)):
        # the outer conjugate only needs accuracy on [0.01, 10]
        back = complementary(complementary(phi), y_max=20.0)
        vals = np.asarray(phi(grid))
        got = np.asarray(back(grid))
        rel = np.abs(got - vals) / np.maximum(vals, 1e-300)
        assert np.max(rel) < 1e-6, phi.kind


def test_conjugate_rejects_linear_growth():
    with pytest.raises(ValueError, match="complement undefined"):
        complementary(power(1.0))


def test_delta2_and_nabla2():
    res = check_delta2(power(2.0))
    assert res.holds and res.K == pytest.approx(4.0, rel=1e-3)
    # the doubling ratio of a pure power is flat, so its drift is ~0
    assert abs(res.slope) < 1e-2
    assert not check_delta2(exp_growth()).holds
    assert check_nabla2(power(3.0)).holds
    assert not check_nabla2(power(1.0)).holds


def test_log_power_gate():
    thresh = (3.0 + math.sqrt(5.0)) / 2.0
    with pytest.raises(ValueError):
        log_power(2.0)
    with pytest.raises(ValueError):
        log_power(thresh - 1e-6)
    log_power(thresh + 1e-6)


def test_log_power_tail_threshold():
    u0 = log_power_tail_threshold(3.0, 4.0)
    assert u0 == pytest.approx(math.exp(16.0 / 3.0), rel=0.01)
    # the defining relation holds at the returned point
    r, s = 3.0, 4.0
    assert (r / s) * (r / s - 1.0) * math.log(u0) == pytest.approx(-1.0, rel=1e-6)


def test_concavity_regions_gate_and_coverage():
    with pytest.raises(ValueError, match="must be >= 2"):
        power_concavity_regions(power(2.0), 1.5)
    # u**3 composed with u**(1/3) is linear, concave everywhere
    regions = power_concavity_regions(power(3.0), 3.0)
    assert regions.covers(1e-3, 1e3)


def test_zygmund_composition_concave_everywhere():
    phi = zygmund(2.0, 0.5)
    regions = power_concavity_regions(phi, 3.0)
    assert regions.covers(1e-4, 1e4)


def test_conjugate_zygmund_power_composition_convex():
    # psi(t**(1/q)) convex for the complement of the zygmund function, q = s/(s-1)
    psi = complementary(zygmund(2.0, 0.5))
    q = 1.5
    t = np.geomspace(1e-3, 1e3, 500)
    g = np.asarray(psi(t ** (1.0 / q)))
    second = g[2:] - 2.0 * g[1:-1] + g[:-2]
    assert np.min(second) > -1e-9 * np.max(np.abs(g))


def test_patch_constant_and_concavity():
    phi = two_power(1.5, 3.0)
    result = patch(phi, 3.0, 0.5, 2.0)
    assert abs(result.c1 - 4.4895) < 1e-3
    assert np.isfinite(result.A) and result.A >= 1.0
    patched = result.phi
    # patched function composed with u**(1/s) is concave: on the log grid
    # every interior point must sit on or above the chord of its neighbours
    t = np.geomspace(1e-5, 1e5, 4096)
    g = np.asarray(patched(t ** (1.0 / 3.0)))
    lam = (t[2:] - t[1:-1]) / (t[2:] - t[:-2])
    chord = lam * g[:-2] + (1.0 - lam) * g[2:]
    scale = np.maximum(np.abs(g[1:-1]), np.abs(chord))
    assert np.min((g[1:-1] - chord) / np.maximum(scale, 1e-300)) >= -1e-10
    # equivalent to the original up to the constant A
    u = np.geomspace(1e-3, 1e3, 200)
    ratio = np.asarray(patched(u)) / np.asarray(phi(u))
    assert np.max(ratio) <= result.A * (1.0 + 1e-9)
    assert np.min(ratio) >= 1.0 / result.A * (1.0 - 1e-9)


def test_patch_gate():
    with pytest.raises(ValueError, match="must be >= 2"):
        patch(two_power(1.5, 3.0), 1.5, 0.5, 2.0)


def test_young_json_round_trip():
    for phi in (power(2.5), two_power(1.5, 3.0), zygmund(2.0, 0.5),
                log_power(3.0), exp_growth()):
        back = YoungFunction.from_json(phi.to_json())
        u = np.geomspace(0.01, 100.0, 50)
        assert np.allclose(np.asarray(back(u)), np.asarray(phi(u)), rtol=1e-12)


def test_builtin_factory_dispatch():
    assert builtin("power", 2.0)(3.0) == pytest.approx(9.0)
    with pytest.raises(ValueError):
        builtin("unknown-kind")
