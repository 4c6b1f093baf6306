import math

import numpy as np
import pytest
from scipy.optimize import brentq

from squeezedpair import AtomPairConfig, gamma12, omega12


def perp(r):
    return AtomPairConfig(1.0, r, 0.0, 0.0)


class TestConfigValidation:
    def test_defaults_are_valid(self):
        cfg = AtomPairConfig()
        assert cfg.mu_hat_dot_r_hat == 0.0

    @pytest.mark.parametrize("kwargs", [
        dict(gamma=0.0),
        dict(gamma=-1.0),
        dict(r12_over_lambda=-0.1),
        dict(mu_hat_dot_r_hat=1.5),
        dict(mu_hat_dot_r_hat=-1.0001),
        dict(delta_over_gamma=-2.0),
    ])
    def test_bad_fields_rejected(self, kwargs):
        with pytest.raises(ValueError):
            AtomPairConfig(**kwargs)


class TestCollectiveDamping:
    def test_small_separation_limit(self):
        assert abs(gamma12(perp(1e-9)) - 1.0) < 1e-6

    def test_zero_separation_returns_unit_limit(self):
        assert gamma12(perp(0.0)) == 1.0

    def test_dicke_limit_holds_for_any_dipole_angle(self):
        for mu in (-1.0, -0.3, 0.0, 0.7, 1.0):
            cfg = AtomPairConfig(1.0, 1e-8, mu, 0.0)
            assert abs(gamma12(cfg) - 1.0) < 1e-6

    def test_half_wavelength_value(self):
        # hand evaluation at x = pi: sin pi = 0, cos pi = -1
        assert abs(gamma12(perp(0.5)) - (-1.5 / math.pi**2)) < 1e-12

    def test_ten_wavelength_value(self):
        # x = 20 pi: sin x = 0, cos x = 1, only the 1/x^2 term survives
        want = 1.5 / (20.0 * math.pi) ** 2
        assert abs(gamma12(perp(10.0)) - want) < 1e-12
        assert abs(want - 3.80e-4) < 1e-6

    def test_bounded_by_one_everywhere(self):
        for r in np.linspace(1e-4, 10.0, 4000):
            assert abs(gamma12(perp(r))) <= 1.0 + 1e-12

    def test_monotone_approach_to_dicke_limit(self):
        values = [gamma12(perp(r)) for r in (0.2, 0.1, 0.05, 0.01, 0.001)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert values[-1] > 0.99999

    def test_series_direct_seam_is_smooth(self):
        # the implementation switches to a series just below x = 1e-2
        r_seam = 1e-2 / (2.0 * math.pi)
        eps = 1e-9
        below = gamma12(perp(r_seam - eps))
        above = gamma12(perp(r_seam + eps))
        assert abs(below - above) < 1e-10

    def test_derivative_bounded_off_origin(self):
        grid = np.linspace(0.05, 4.0, 2000)
        vals = np.array([gamma12(perp(r)) for r in grid])
        deriv = np.diff(vals) / np.diff(grid)
        assert np.abs(deriv).max() < 20.0

    def test_first_zero_near_half_wavelength(self):
        assert gamma12(perp(0.4)) > 0 > gamma12(perp(0.6))
        root = brentq(lambda r: gamma12(perp(r)), 0.4, 0.6)
        assert 0.4 < root < 0.6


class TestExchangeShift:
    def test_half_wavelength_value(self):
        want = 0.75 * (1.0 / math.pi - 1.0 / math.pi**3)
        assert abs(omega12(perp(0.5)) - want) < 1e-12
        assert abs(want - 0.21455) < 1e-5

    def test_near_field_divergence(self):
        x = 0.01
        cfg = perp(x / (2.0 * math.pi))
        lead = 0.75 / x**3
        assert abs(omega12(cfg) - lead) / lead < 0.01

    def test_far_field_decay(self):
        assert abs(omega12(perp(100.0))) < 2e-3

    def test_zero_separation_rejected(self):
        with pytest.raises(ValueError, match="zero separation"):
            omega12(perp(0.0))

    def test_derivative_bounded_off_origin(self):
        grid = np.linspace(0.2, 4.0, 2000)
        vals = np.array([omega12(perp(r)) for r in grid])
        deriv = np.diff(vals) / np.diff(grid)
        assert np.abs(deriv).max() < 30.0
