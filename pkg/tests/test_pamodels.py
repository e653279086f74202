"""Coupler coefficient algebra, reconfigurability curves and ideal PA types."""

import math

import numpy as np
import pytest

from pinchsim import (
    DCParams,
    FullIdealPA,
    KAPPA_MAX,
    MatchedIdealPA,
    acpc_phase_span,
    check_energy_conservation,
    coupling_from_mode_impedances,
    dc_amp_phase,
    dc_coefficients,
    dc_three_port,
    equal_power_coupling,
)


class TestDCParams:
    def test_bounds(self):
        DCParams(0.0, 0.1)
        DCParams(0.999999, math.pi - 0.01)
        with pytest.raises(ValueError):
            DCParams(1.0, 1.0)
        with pytest.raises(ValueError):
            DCParams(-0.1, 1.0)
        with pytest.raises(ValueError):
            DCParams(0.5, 0.0)
        with pytest.raises(ValueError):
            DCParams(0.5, math.pi)


class TestDCCoefficients:
    def test_uncoupled_is_pure_delay(self):
        for phi in (0.3, 1.2, 2.8):
            t1, t2 = dc_coefficients(DCParams(0.0, phi))
            assert abs(t1 - np.exp(-1j * phi)) < 1e-15
            assert t2 == 0

    def test_quarter_wave_reduces_to_aoc_form(self):
        for kappa in (0.0, 0.3, 0.9):
            t1, t2 = dc_coefficients(DCParams(kappa, math.pi / 2))
            assert abs(t1 - (-1j * math.sqrt(1 - kappa**2))) < 1e-15
            assert abs(t2 - kappa) < 1e-15

    def test_radiated_power_closed_form(self):
        t1, t2 = dc_coefficients(DCParams(0.6, math.pi / 4))
        assert abs(abs(t2) ** 2 - 0.18 / 0.82) < 1e-15

    def test_lossless_identity(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            p = DCParams(rng.uniform(0, 1 - 1e-9), rng.uniform(1e-6, math.pi - 1e-6))
            t1, t2 = dc_coefficients(p)
            assert abs(abs(t1) ** 2 + abs(t2) ** 2 - 1.0) < 1e-12


class TestDCThreePort:
    def test_structure(self):
        p = DCParams(0.4, 0.9)
        t1, t2 = dc_coefficients(p)
        m = dc_three_port(p)
        assert np.array_equal(np.diag(m), np.zeros(3))
        assert m[0, 1] == m[1, 0] == t1
        assert m[0, 2] == m[2, 0] == t2
        assert m[1, 2] == m[2, 1] == 0

    def test_always_lossless(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            p = DCParams(rng.uniform(0, 1 - 1e-9), rng.uniform(0.05, math.pi - 0.05))
            ok, sigma = check_energy_conservation(dc_three_port(p), 1e-9)
            assert ok and abs(sigma - 1.0) < 1e-10

    def test_full_radiation_limit(self):
        t1, t2 = dc_coefficients(DCParams(1 - 1e-9, math.pi / 2))
        assert abs(t2 - 1.0) < 1e-4
        assert abs(t1) < 1e-4


class TestAmpPhase:
    def test_matches_complex_values(self):
        rng = np.random.default_rng(2)
        for _ in range(300):
            p = DCParams(rng.uniform(0, 1 - 1e-9), rng.uniform(0.02, math.pi - 0.02))
            t1, t2 = dc_coefficients(p)
            amp1, amp2, ph1, ph2 = dc_amp_phase(p)
            assert abs(amp1 - abs(t1)) < 1e-13
            assert abs(amp2 - abs(t2)) < 1e-13
            assert abs(np.angle(t2) - ph2) < 1e-12
            if p.kappa > 0:
                assert abs(np.angle(t1) - ph1) < 1e-12

    def test_quadrature_exact(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            p = DCParams(rng.uniform(0, 1 - 1e-9), rng.uniform(0.02, math.pi - 0.02))
            _, _, ph1, ph2 = dc_amp_phase(p)
            assert ph2 - ph1 == math.pi / 2

    def test_aoc_phases_constant(self):
        for kappa in (0.0, 0.2, 0.9, 1 - 1e-9):
            _, _, ph1, ph2 = dc_amp_phase(DCParams(kappa, math.pi / 2))
            assert abs(ph2) < 1e-15
            assert abs(ph1 + math.pi / 2) < 1e-15

    def test_uncoupled_phase_value(self):
        _, _, _, ph2 = dc_amp_phase(DCParams(0.0, math.pi / 4))
        assert abs(ph2 - math.pi / 4) < 1e-15

    def test_amplitude_monotonicity_in_kappa(self):
        for phi in (0.3, math.pi / 2, 2.5):
            kappas = np.linspace(0.0, 1 - 1e-9, 50)
            amps = np.array([dc_amp_phase(DCParams(k, phi))[:2] for k in kappas])
            assert (np.diff(amps[:, 0]) < 0).all()  # through falls
            assert (np.diff(amps[:, 1]) > 0).all()  # radiated rises

    def test_phase_range_endpoint_matches_span(self):
        phi = 0.4
        span, (lo, hi) = acpc_phase_span(phi)
        ph2_at_zero = dc_amp_phase(DCParams(0.0, phi))[3]
        assert abs(ph2_at_zero - hi) < 1e-15
        assert abs(span - (math.pi / 2 - phi)) < 1e-15
        # kappa -> 1 squeezes the phase toward the open end at 0.
        ph2_near_one = dc_amp_phase(DCParams(1 - 1e-9, phi))[3]
        assert 0 < ph2_near_one < 1e-3


class TestPhaseSpan:
    def test_five_degrees(self):
        span, interval = acpc_phase_span(math.radians(5.0))
        assert abs(math.degrees(span) - 85.0) < 1e-12
        assert interval[0] == 0.0

    def test_quarter_wave_no_phase_control(self):
        span, interval = acpc_phase_span(math.pi / 2)
        assert span == 0.0
        assert interval == (0.0, 0.0)

    def test_forty_five_degrees(self):
        span, _ = acpc_phase_span(math.radians(45.0))
        assert abs(math.degrees(span) - 45.0) < 1e-12

    def test_above_quarter_wave_interval_negative(self):
        span, (lo, hi) = acpc_phase_span(math.radians(120.0))
        assert lo < 0 and hi == 0.0
        assert abs(span + lo) < 1e-15


class TestModeImpedances:
    def test_equal_impedances_no_coupling(self):
        kappa, matched = coupling_from_mode_impedances(50.0, 50.0, 50.0)
        assert kappa == 0.0 and matched

    def test_matched_pair(self):
        kappa, matched = coupling_from_mode_impedances(100.0, 25.0, 50.0)
        assert abs(kappa - 0.6) < 1e-15 and matched

    def test_unmatched_pair(self):
        kappa, matched = coupling_from_mode_impedances(100.0, 50.0, 50.0)
        assert abs(kappa - 1 / 3) < 1e-15 and not matched

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            coupling_from_mode_impedances(25.0, 100.0, 50.0)


def _radiated_fractions(kappas):
    """Brute-force power split of an AOC chain with the given couplings."""
    through = 1.0
    fractions = []
    for kappa in kappas:
        fractions.append(through * kappa**2)
        through *= 1 - kappa**2
    return np.array(fractions)


class TestEqualPowerCoupling:
    def test_single(self):
        kappas = equal_power_coupling(1)
        assert kappas.shape == (1,)
        assert kappas[0] == KAPPA_MAX

    def test_two(self):
        kappas = equal_power_coupling(2)
        assert abs(kappas[0] - math.sqrt(0.5)) < 1e-15
        assert kappas[1] == KAPPA_MAX
        assert np.allclose(_radiated_fractions(kappas), [0.5, 0.5], atol=1e-8)

    def test_four_uniform_fractions(self):
        fractions = _radiated_fractions(equal_power_coupling(4))
        assert np.abs(fractions - 0.25).max() < 1e-6

    def test_large_n_uniform(self):
        n = 16
        fractions = _radiated_fractions(equal_power_coupling(n))
        assert np.abs(fractions - 1 / n).max() < 1e-6


class TestIdealPATypes:
    def test_matched_pair_energy_bound(self):
        MatchedIdealPA(theta1=0.6, theta2=0.8j)
        with pytest.raises(ValueError):
            MatchedIdealPA(theta1=0.8, theta2=0.7)

    def test_matched_three_port_shape(self):
        pa = MatchedIdealPA(theta1=0.6, theta2=0.8j)
        m = pa.three_port()
        assert m[0, 1] == 0.6 and m[0, 2] == 0.8j
        ok, _ = check_energy_conservation(m, 1e-9)
        assert ok

    def test_full_ideal_rejects_active_matrix(self):
        with pytest.raises(ValueError):
            FullIdealPA(theta=1.2 * np.eye(3))

    def test_full_ideal_accepts_passive(self):
        pa = FullIdealPA(theta=0.5 * np.eye(3))
        assert pa.theta.shape == (3, 3)
