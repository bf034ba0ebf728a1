"""Map orbits and bifurcation scans."""

import numpy as np
import pytest

from extropy.distributions import NumericalDomainError, ValidationError
from extropy.dynamics import (
    MapConfig,
    bifurcation_scan,
    henon_orbit,
    logistic_orbit,
)


class TestLogisticOrbit:
    def test_first_iterates(self):
        orbit = logistic_orbit(4.0, x0=0.1, burn_in=0, length=2)
        np.testing.assert_allclose(orbit.values, [0.36, 0.9216], atol=1e-12)

    def test_fixed_point(self):
        orbit = logistic_orbit(2.5, x0=0.1, burn_in=500, length=10)
        np.testing.assert_allclose(orbit.values, 1 - 1 / 2.5, atol=1e-6)

    def test_period_two_window(self):
        orbit = logistic_orbit(3.2, burn_in=500, length=60)
        assert len(set(np.round(orbit.values, 2).tolist())) == 2

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValidationError):
            logistic_orbit(4.5)
        with pytest.raises(ValidationError):
            logistic_orbit(3.0, x0=0.0)

    def test_determinism(self):
        a = logistic_orbit(3.9, burn_in=100, length=50)
        b = logistic_orbit(3.9, burn_in=100, length=50)
        np.testing.assert_array_equal(a.values, b.values)


class TestHenonOrbit:
    def test_first_iterate(self):
        orbit = henon_orbit(1.4, burn_in=0, length=2)
        # x1 = 1 + 0.1 - 1.4 * 0.01, then y1 = 0.03
        assert orbit.values[0] == pytest.approx(1.086, abs=1e-12)
        assert orbit.values[1] == pytest.approx(1 + 0.03 - 1.4 * 1.086**2, abs=1e-12)

    def test_periodic_regime_small_state_count(self):
        orbit = henon_orbit(1.0, burn_in=1000, length=300)
        assert len(set(np.round(orbit.values, 2).tolist())) <= 8

    def test_chaotic_regime_many_states(self):
        orbit = henon_orbit(1.4, burn_in=1000, length=500)
        assert len(set(np.round(orbit.values, 2).tolist())) > 100

    def test_divergence_reported(self):
        with pytest.raises(NumericalDomainError):
            henon_orbit(1.4, x0=1e3, y0=1e3, burn_in=0, length=5)


class TestBifurcationScan:
    def test_logistic_rates_increase_across_windows(self):
        rates = {}
        for r in (2.6, 2.8, 3.2, 3.55, 3.9):
            scan = bifurcation_scan("logistic", r, r + 1e-9, 2, base="two")
            rates[r] = scan.points[0].rate.value
        assert rates[2.6] == 0.0
        assert rates[3.9] > rates[3.55] > rates[3.2] > rates[2.8]

    def test_distinct_state_counts(self):
        scan = bifurcation_scan("logistic", 2.8, 3.2, 2, base="two")
        assert scan.points[0].distinct_states == 1
        assert scan.points[1].distinct_states == 2

    def test_henon_ordering(self):
        low = bifurcation_scan("henon", 1.05, 1.06, 2, base="two").points[0]
        high = bifurcation_scan("henon", 1.39, 1.4, 2, base="two").points[1]
        assert high.rate.value > low.rate.value

    def test_grid_shape_and_determinism(self):
        a = bifurcation_scan("logistic", 2.5, 4.0, 31, length=100, base="two")
        b = bifurcation_scan("logistic", 2.5, 4.0, 31, length=100, base="two")
        assert len(a.points) == 31
        assert a.parameters() == sorted(a.parameters())
        assert [p.rate.value for p in a.points] == [p.rate.value for p in b.points]

    def test_failures_recorded_not_fatal(self):
        scan = bifurcation_scan("henon", 1.0, 1.4, 3, x0=1e5, y0=1e5)
        assert all(p.rate is None and p.error for p in scan.points)
        assert len(scan.points) == 3

    def test_rejects_tiny_grid(self):
        with pytest.raises(ValidationError):
            bifurcation_scan("logistic", 2.5, 4.0, 1)


class TestMapConfig:
    def test_validation(self):
        with pytest.raises(ValidationError):
            MapConfig("circle", {})
        with pytest.raises(ValidationError):
            MapConfig("logistic", {"r": 3.0}, burn_in=-1)

    def test_orbit_dispatch(self):
        config = MapConfig("logistic", {"r": 2.5, "x0": 0.1}, burn_in=200, length=5)
        np.testing.assert_allclose(config.orbit().values, 0.6, atol=1e-6)
