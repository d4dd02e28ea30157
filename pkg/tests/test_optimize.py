import numpy as np
import pytest

from qetsim.model import ModelParams, energy_decomposition, ground_state
from qetsim.optimize import (TARGET_EXTRACTED, TARGET_SITE, brute_force_max,
                             crossover_field, direct_objective,
                             max_extracted_energy, max_site_reduction,
                             peak_extracted_energy, protocol_sweep,
                             theta_sinusoid)
from qetsim.protocol import correlators_closed, run_protocol

# landmarks of the closed forms, frozen from a high-precision evaluation
PEAK_FIELD = 0.176023978166
PEAK_RATIO = 0.0321883027502  # ratio at h = 0.18, where the peak is quoted
CROSSOVER_FIELD = 0.241331273717


def gs(h, k=1.0):
    return ground_state(ModelParams(h=h, k=k))


class TestClosedFormMaxima:
    def test_zero_field_maxima_vanish(self):
        state = gs(0.0)
        assert max_extracted_energy(state).value == pytest.approx(0.0, abs=1e-14)
        assert max_site_reduction(state).value == pytest.approx(0.0, abs=1e-14)
        assert max_extracted_energy(state).params.theta == 0.0

    def test_formulas(self):
        state = gs(0.5)
        e = energy_decomposition(state)
        c = correlators_closed(state)
        h = 0.5
        ext = max_extracted_energy(state)
        site = max_site_reduction(state)
        assert ext.value == pytest.approx(
            np.hypot(e.site_b, h * c.yy) - abs(e.site_b), abs=1e-14)
        assert site.value == pytest.approx(
            np.hypot(e.site_b, h * c.xx) - abs(e.site_b), abs=1e-14)

    def test_certificate_params_reproduce_value(self):
        for h in (0.1, 0.5, 1.5):
            state = gs(h)
            ext = max_extracted_energy(state)
            ledger = run_protocol(state, ext.params)
            assert abs(ledger.extracted - ext.value) < 1e-12
            assert abs(ledger.extracted_site - ext.value) < 1e-12
            assert abs(ledger.extracted_bond) < 1e-12
            site = max_site_reduction(state)
            ledger = run_protocol(state, site.params)
            assert abs(ledger.extracted_site - site.value) < 1e-12
            assert abs(ledger.extracted_bond - site.bond_reduction) < 1e-12
            assert site.bond_reduction < 0.0

    def test_site_reduction_dominates(self):
        for h in (0.05, 0.3, 1.0, 2.5):
            state = gs(h)
            assert (max_site_reduction(state).value
                    >= max_extracted_energy(state).value)

    def test_bond_release_swamps_site_gain_at_small_field(self):
        state = gs(0.05)
        site = max_site_reduction(state)
        assert abs(site.bond_reduction) > 5.0 * site.value
        assert site.value + site.bond_reduction < 0.0

    def test_certificate_identities(self):
        for h in (0.1, 0.7, 1.9):
            state = gs(h)
            for cert in (max_extracted_energy(state), max_site_reduction(state)):
                lhs = cert.amplitude**2 + cert.cross_amplitude**2
                rhs = (cert.value + abs(cert.amplitude))**2
                assert lhs == pytest.approx(rhs, rel=1e-10)
                assert (cert.sin_2theta**2 + cert.cos_2theta**2
                        == pytest.approx(1.0, abs=1e-12))
                two_theta = np.arctan2(cert.sin_2theta, cert.cos_2theta)
                wrapped = (two_theta + cert.phase + np.pi) % (2 * np.pi) - np.pi
                assert abs(wrapped) < 1e-12

    def test_cross_amplitude_consistency(self):
        # the gain amplitude collapses to (r_y s_x - r_x s_y) h yy via the
        # correlator identity k*xxz = h*(xx - yy)
        for h in (0.2, 1.1):
            state = gs(h)
            cert = max_extracted_energy(state)
            rx, ry, _ = cert.params.measure_axis
            sx, sy, _ = cert.params.feedback_axis
            expected = (ry * sx - rx * sy) * h * correlators_closed(state).yy
            assert abs(cert.cross_amplitude - expected) < 1e-12


class TestLandmarks:
    def test_peak_location_and_ratio(self):
        peak = peak_extracted_energy()
        assert abs(peak.h_peak - PEAK_FIELD) < 1e-3
        assert abs(peak.ratio_to_injected - PEAK_RATIO) < 1e-3

    def test_crossover(self):
        assert abs(crossover_field() - CROSSOVER_FIELD) < 1e-3


class TestSinusoid:
    def test_direct_objective_is_a_pure_sinusoid(self):
        rng = np.random.default_rng(12)
        state = gs(0.8)
        for target in (TARGET_EXTRACTED, TARGET_SITE):
            f = direct_objective(state, target)
            mu, nu, xi, eta = rng.uniform(0, np.pi, 4) * [1, 2, 1, 2]
            a, b, c = theta_sinusoid(f, mu, nu, xi, eta)
            for theta in rng.uniform(-np.pi / 2, np.pi / 2, 5):
                expected = a + b * np.cos(2 * theta) + c * np.sin(2 * theta)
                assert abs(f(mu, nu, xi, eta, theta) - expected) < 1e-13

    def test_unknown_target(self):
        with pytest.raises(ValueError):
            direct_objective(gs(0.5), "nonsense")


class TestBruteForce:
    def test_matches_closed_forms(self):
        state = gs(0.5)
        ext = brute_force_max(state, TARGET_EXTRACTED)
        site = brute_force_max(state, TARGET_SITE)
        assert abs(ext.value - max_extracted_energy(state).value) < 1e-8
        assert abs(site.value - max_site_reduction(state).value) < 1e-8

    def test_certificate_value_is_reachable(self):
        state = gs(0.3)
        cert = brute_force_max(state, TARGET_EXTRACTED)
        ledger = run_protocol(state, cert.params)
        assert abs(ledger.extracted - cert.value) < 1e-12

    def test_zero_field_grid_max_is_zero(self):
        state = gs(0.0)
        cert = brute_force_max(state, TARGET_EXTRACTED)
        assert abs(cert.value) < 1e-10

    def test_resolution_floor(self):
        with pytest.raises(ValueError):
            brute_force_max(gs(0.5), TARGET_EXTRACTED, resolution=32)

    def test_deterministic(self):
        state = gs(0.3)
        one = brute_force_max(state, TARGET_SITE)
        two = brute_force_max(state, TARGET_SITE)
        assert one.value == two.value
        assert one.params == two.params


class TestSweep:
    def test_columns(self):
        rows = protocol_sweep([0.01, 0.5], k=1.0)
        first, second = rows
        assert first.h_yy == pytest.approx(first.h * first.yy)
        assert abs(first.h_yy) < 0.006
        assert first.net_at_site_optimum < 0.0
        assert second.net_at_site_optimum < 0.0
        assert second.extracted_max > 0.0
        assert second.site_reduction_max >= second.extracted_max
