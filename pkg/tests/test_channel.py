"""Geometry, distances and wireless link coefficients."""

import math

import numpy as np
import pytest

from pinchsim import (
    ChannelState,
    FreeSpace,
    Geometry,
    PowerLaw,
    channel_vector,
    distance,
    pa_abscissas,
    wavelength,
)

GEOM = Geometry(y_g=0.0, z_g=3.0, receiver=(15.0, 0.0, 0.0), x_max=30.0)


class TestGeometry:
    def test_xi(self):
        assert GEOM.xi == 9.0

    def test_receiver_on_axis_rejected(self):
        with pytest.raises(ValueError):
            Geometry(y_g=0.0, z_g=0.0, receiver=(5.0, 0.0, 0.0), x_max=30.0)

    def test_nonpositive_guide_rejected(self):
        with pytest.raises(ValueError):
            Geometry(y_g=0.0, z_g=3.0, receiver=(1.0, 0.0, 0.0), x_max=0.0)


class TestAbscissas:
    def test_single(self):
        assert np.array_equal(pa_abscissas([5.0]), [5.0])

    def test_prefix_sums(self):
        assert np.array_equal(pa_abscissas([2.0, 1.0, 1.0]), [2.0, 3.0, 4.0])

    def test_round_trip_with_differences(self):
        rng = np.random.default_rng(0)
        x = rng.uniform(0.1, 2.0, 7)
        s = pa_abscissas(x)
        back = np.concatenate(([s[0]], np.diff(s)))
        assert np.allclose(back, x, rtol=0, atol=1e-12)
        assert np.array_equal(pa_abscissas(back), s)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            pa_abscissas([1.0, -0.5])


class TestDistance:
    def test_directly_under_receiver(self):
        assert distance(15.0, GEOM) == 3.0

    def test_symmetry_about_receiver(self):
        assert distance(15.0 + 0.7, GEOM) == distance(15.0 - 0.7, GEOM)

    def test_monotone_beyond_receiver(self):
        d = distance(np.array([15.0, 16.0, 20.0, 29.0]), GEOM)
        assert (np.diff(d) > 0).all()


class TestChannelVector:
    lam = 0.02

    def test_free_space_amplitude(self):
        geom = Geometry(y_g=0.0, z_g=1.0, receiver=(10.0, 0.0, 0.0), x_max=30.0)
        h = channel_vector(10.0, geom, self.lam, FreeSpace())  # d = 1 m
        assert abs(abs(h[0]) - self.lam / (4 * math.pi)) < 1e-15
        assert abs(abs(h[0]) - 1.5915494309189535e-3 * (self.lam / 0.02)) < 1e-6

    def test_inverse_distance_ratio(self):
        geom = Geometry(y_g=0.0, z_g=1.0, receiver=(0.0, 0.0, 0.0), x_max=100.0)
        s = np.array([0.0, math.sqrt(3.0)])  # distances 1 and 2
        h = channel_vector(s, geom, self.lam, FreeSpace())
        assert abs(abs(h[0]) / abs(h[1]) - 2.0) < 1e-12

    def test_power_law_reference_distance(self):
        model = PowerLaw(c0=10 ** (-2.8), d0=1.0, alpha=1.0)
        geom = Geometry(y_g=0.0, z_g=1.0, receiver=(10.0, 0.0, 0.0), x_max=30.0)
        h = channel_vector(10.0, geom, self.lam, model)  # d = d0
        assert abs(abs(h[0]) ** 2 - model.c0) < 1e-15

    def test_phase_convention(self):
        geom = Geometry(y_g=0.0, z_g=1.0, receiver=(10.0, 0.0, 0.0), x_max=30.0)
        h = channel_vector(10.0, geom, self.lam, FreeSpace())
        d = distance(10.0, geom)
        expected = np.exp(-2j * math.pi * d / self.lam)
        assert abs(h[0] / abs(h[0]) - expected) < 1e-9

    def test_amplitude_strictly_decreasing_both_models(self):
        s = np.linspace(15.0, 25.0, 40)
        for model in (FreeSpace(), PowerLaw(c0=1e-3, d0=1.0, alpha=1.7)):
            h = channel_vector(s, GEOM, self.lam, model)
            assert (np.diff(np.abs(h)) < 0).all()

    def test_phase_wraps_once_per_wavelength(self):
        geom = Geometry(y_g=0.0, z_g=1.0, receiver=(0.0, 0.0, 0.0), x_max=100.0)
        d0 = 5.0
        s = np.sqrt(np.array([d0, d0 + self.lam]) ** 2 - 1.0)
        h = channel_vector(s, geom, self.lam, FreeSpace())
        dphi = np.angle(h[1] / h[0])
        assert abs(dphi) < 1e-9  # exactly one full turn

    def test_deterministic(self):
        a = channel_vector([14.0, 15.5], GEOM, self.lam, FreeSpace())
        b = channel_vector([14.0, 15.5], GEOM, self.lam, FreeSpace())
        assert np.array_equal(a, b)


class TestChannelState:
    def test_matched_constructor(self):
        ch = ChannelState.matched(np.array([1e-3 + 0j, 2e-3]))
        assert ch.is_matched
        assert ch.h_tt.shape == (2, 2)

    def test_reflection_bound_enforced(self):
        with pytest.raises(ValueError):
            ChannelState(
                h_tr=np.array([1e-3]),
                h_tt=np.zeros((1, 1)),
                gamma_r=1.5,
            )

    def test_wavelength_constant(self):
        lam = wavelength(15e9)
        assert abs(lam - 0.019986163866666666) < 1e-15
