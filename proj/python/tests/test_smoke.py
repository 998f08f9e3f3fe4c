"""Smoke tests for the affinestrand python module."""

import math

import pytest

affinestrand = pytest.importorskip("affinestrand")


def test_bracket_and_ad_star():
    e1, e2, e3 = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)
    assert affinestrand.bracket(e1, e2) == pytest.approx(e3)
    assert affinestrand.ad_star(e1, e2) == pytest.approx((0.0, 0.0, -1.0))


def test_exp_so3_quarter_turn():
    r = affinestrand.exp_so3((0.0, 0.0, math.pi / 2.0))
    e1_rotated = [r[i][0] for i in range(3)]
    assert e1_rotated == pytest.approx([0.0, 1.0, 0.0], abs=1e-14)


def test_density_single_terms():
    zero = (0.0, 0.0, 0.0)
    e1 = (1.0, 0.0, 0.0)
    assert affinestrand.density(zero, zero, zero, e1, zero) == pytest.approx(0.5)
    assert affinestrand.density(zero, zero, zero, zero, e1, v=2.0) == pytest.approx(-2.0)
    d = affinestrand.derivatives(zero, (2.0, 2.0, 3.0), zero, zero, zero,
                                 inertia_i=(1.0, 2.0, 3.0))
    assert d["mu_t"] == pytest.approx((2.0, 1.0, 1.0))


def test_reduced_bracket_hand_case():
    e1, e2, e3 = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)
    zero = (0.0, 0.0, 0.0)
    value = affinestrand.reduced_bracket(e1, zero, zero, e3, zero, e2, zero)
    assert value == pytest.approx(-1.0)


def test_identity_suite_passes():
    report = affinestrand.identity_suite(seed=42, trials=50)
    assert report["all_pass"]
    assert len(report["checks"]) >= 12


def test_run_matches_wave_oracle():
    n = 64
    length = 2.0 * math.pi
    zero = [(0.0, 0.0, 0.0)] * n
    rho0 = [(0.1 * math.sin(2.0 * math.pi * j / n), 0.0, 0.0) for j in range(n)]
    t_end = 1.0

    result = affinestrand.run_strand(rho0, zero, zero, zero, length, t_end,
                                     snapshot_stride=1 << 20)
    oracle = affinestrand.wave_oracle(rho0, zero, length, dt=0.4 * length / n, t_end=t_end)

    final = result["rho"][-1]
    err = max(abs(a[0] - b[0]) for a, b in zip(final, oracle))
    assert err < 5e-3

    # pure-string invariant subspace
    assert max(abs(c) for v in result["final_mu_t"] for c in v) <= 1e-12
    assert max(abs(c) for v in result["final_omega_s"] for c in v) <= 1e-12

    # energy stays near its initial value
    energies = result["energy"]
    assert abs(energies[-1] - energies[0]) <= 1e-6 * max(1.0, abs(energies[0]))
