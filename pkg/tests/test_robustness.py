"""Sensitivity coefficients, rms shift deviation, and shift profiles."""

import math

import numpy as np
import pytest

from dressedclock import (
    DeviationBudget,
    TrapConfig,
    dressed_clock_shift,
    find_static_magic_field,
    fit_shift_expansion,
    rms_shift_deviation,
    sensitivity_report,
    shift_profile,
    static_clock_shift,
)
from dressedclock.robustness import field_sensitivities, polarization_sensitivities


@pytest.fixture(scope="module")
def report_15(atom, magic_15_wffa):
    return sensitivity_report(atom, magic_15_wffa)


class TestFieldSensitivities:
    def test_linear_response_reproduces_coefficient_change(self, atom, magic_15_wffa):
        alpha_ioffe, _ = field_sensitivities(atom, magic_15_wffa)
        trap = magic_15_wffa.trap()
        rel = 5e-4
        shifted = fit_shift_expansion(
            atom, trap.replace(b_ioffe=trap.b_ioffe * (1 + rel)), method="wffa",
            chi_max=magic_15_wffa.expansion.chi_max,
        )
        base = magic_15_wffa.expansion
        predicted = np.array([base.a0, base.a1, base.a2]) + alpha_ioffe * rel
        measured = np.array([shifted.a0, shifted.a1, shifted.a2])
        assert measured == pytest.approx(predicted, abs=0.05 * max(abs(alpha_ioffe)) * rel + 1e-4)

    def test_static_limit_quadratic_response(self, atom):
        b_magic, curvature = find_static_magic_field(atom)
        c = curvature / 2
        for delta_b in (0.01, 0.02):
            rise = static_clock_shift(atom, b_magic + delta_b) - static_clock_shift(atom, b_magic)
            assert rise == pytest.approx(431.0 * delta_b**2, rel=0.05)
            assert rise == pytest.approx(c * delta_b**2, rel=0.01)


class TestPolarizationSensitivities:
    def test_beta0_vanishes(self, atom, report_15):
        assert abs(report_15.beta0_residual) < 1e-3

    def test_circular_polarization_is_alpha_independent(self, atom, magic_15_wffa):
        trap = magic_15_wffa.trap()
        values = [
            dressed_clock_shift(atom, trap, 0.05, alpha, "wffa")
            for alpha in (0.0, 0.9, 2.2, 4.4)
        ]
        spread = max(values) - min(values)
        assert spread < 1e-9 * abs(values[0])

    def test_cos_two_alpha_structure(self, atom, magic_15_wffa):
        """With a polarization offset the shift picks up a cos(2 alpha)
        modulation: equal at alpha and -alpha, pi+alpha; opposite (about the
        mean) at alpha and alpha +/- pi/2."""
        eps = math.radians(2.0)
        trap = magic_15_wffa.trap()
        tilted = trap.replace(polarization_delta=trap.polarization_delta + eps)
        chi = 0.05

        def shift(alpha):
            return dressed_clock_shift(atom, tilted, chi, alpha, "wffa")

        a = 0.6
        assert shift(-a) == pytest.approx(shift(a), abs=1e-7)
        assert shift(math.pi + a) == pytest.approx(shift(a), abs=1e-7)
        mean = np.mean([shift(k * math.pi / 8) for k in range(16)])
        assert shift(a) - mean == pytest.approx(-(shift(a + math.pi / 2) - mean), rel=0.05)

    def test_harmonics_beyond_cos2alpha_are_small(self, atom, magic_15_wffa):
        eps = math.radians(1.0)
        trap = magic_15_wffa.trap()
        tilted = trap.replace(polarization_delta=trap.polarization_delta + eps)
        alphas = np.arange(8) * (math.pi / 4)
        values = np.array([
            dressed_clock_shift(atom, tilted, 0.05, a, "wffa") for a in alphas
        ])
        c2 = 2 / 8 * np.sum(values * np.cos(2 * alphas))
        c4 = 2 / 8 * np.sum(values * np.cos(4 * alphas))
        assert abs(c4) < 0.05 * abs(c2)

    def test_epsilon_antisymmetry_of_beta(self, atom, magic_15_wffa):
        beta, gamma = polarization_sensitivities(atom, magic_15_wffa)
        half_beta, half_gamma = polarization_sensitivities(
            atom, magic_15_wffa, epsilon_step=math.radians(0.25)
        )
        assert half_beta == pytest.approx(beta, rel=0.05, abs=1e-3)
        assert half_gamma == pytest.approx(gamma, rel=0.05)


class TestRmsShiftDeviation:
    def test_zero_budget_gives_zero(self, atom, magic_15_wffa):
        value = rms_shift_deviation(atom, magic_15_wffa, DeviationBudget(), chi=0.1)
        assert value == 0.0

    def test_quadrature_composition(self, atom, magic_15_wffa):
        chi = 0.08
        only_i = rms_shift_deviation(atom, magic_15_wffa, DeviationBudget(rel_ioffe=2.5e-4), chi)
        only_rf = rms_shift_deviation(atom, magic_15_wffa, DeviationBudget(rel_rf=5e-4), chi)
        only_p = rms_shift_deviation(
            atom, magic_15_wffa, DeviationBudget(polarization_offset=math.radians(0.2)), chi
        )
        total = rms_shift_deviation(
            atom, magic_15_wffa,
            DeviationBudget(2.5e-4, 5e-4, math.radians(0.2)), chi,
        )
        assert total == pytest.approx(math.hypot(only_i, math.hypot(only_rf, only_p)), rel=1e-9)

    def test_undressed_trap_barely_affected(self, atom):
        b_magic, _ = find_static_magic_field(atom)
        trap = TrapConfig(b_ioffe=b_magic, rf_amplitude=0.0, rf_frequency=1e6)
        budget = DeviationBudget(2.5e-4, 5e-4, math.radians(0.2))
        chi = 0.18
        dev = rms_shift_deviation(atom, trap, budget, chi, method="rwa")
        rise = abs(
            dressed_clock_shift(atom, trap, chi, 0.0, "rwa")
            - dressed_clock_shift(atom, trap, 0.0, 0.0, "rwa")
        )
        assert dev < 0.1 * rise


class TestShiftProfile:
    def test_zero_row(self, atom):
        b_magic, _ = find_static_magic_field(atom)
        trap = TrapConfig(b_ioffe=b_magic, rf_amplitude=0.0, rf_frequency=1e6)
        table = shift_profile(atom, trap, u_trap_max=0.0, method="rwa")
        assert len(table) == 1
        assert table.u_trap[0] == 0.0
        assert table.shift[0] == 0.0
        assert table.rms_dev[0] == 0.0

    def test_undressed_profile_matches_static_analysis(self, atom):
        """Cross-check the profile against the closed-form quadratic response
        C * (chi/(2 B))^2 evaluated through the potential parametrization."""
        b_magic, curvature = find_static_magic_field(atom)
        trap = TrapConfig(b_ioffe=b_magic, rf_amplitude=0.0, rf_frequency=1e6)
        table = shift_profile(atom, trap, u_trap_max=1.75e5, n_points=30, method="rwa")
        assert table.u_trap[-1] == pytest.approx(1.75e5, rel=1e-6)
        # order 10 Hz at the full 175 kHz depth
        assert 5.0 < abs(table.shift[-1]) < 40.0
        from dressedclock import MU_B_HZ_PER_G, lande_g_factor

        g2 = abs(lande_g_factor(atom, 2))
        for u, s in zip(table.u_trap[10:], table.shift[10:]):
            chi = 2 * trap.b_ioffe * u / (g2 * MU_B_HZ_PER_G)
            predicted = (curvature / 2) * (chi / (2 * trap.b_ioffe)) ** 2
            assert s == pytest.approx(predicted, rel=0.08)

    def test_dressed_profile_orders_below_undressed(self, atom, wffa_points):
        b_magic, _ = find_static_magic_field(atom)
        undressed = TrapConfig(b_ioffe=b_magic, rf_amplitude=0.0, rf_frequency=1e6)
        pu = shift_profile(atom, undressed, u_trap_max=2.2e4, n_points=12, method="rwa")
        pd = shift_profile(atom, wffa_points[1.1], u_trap_max=2.2e4, n_points=12)
        su = np.interp(2e4, pu.u_trap, np.abs(pu.shift))
        sd = np.interp(2e4, pd.u_trap, np.abs(pd.shift))
        assert su / sd > 20.0

    def test_budget_column_populated(self, atom, magic_15_wffa):
        budget = DeviationBudget(2.5e-4, 5e-4, math.radians(0.2))
        table = shift_profile(atom, magic_15_wffa, budget=budget, u_trap_max=5e3, n_points=6)
        assert np.all(table.rms_dev > 0)
        assert not table.truncated


class TestSensitivityReport:
    def test_report_fields(self, report_15):
        assert report_15.method == "WFFA"
        assert len(report_15.alpha_ioffe) == 3
        assert len(report_15.alpha_rf) == 3
        assert len(report_15.beta) == 2
        assert len(report_15.gamma) == 3
        assert report_15.field_step_rel == pytest.approx(1e-3)

    def test_alpha0_decreases_toward_resonance(self, atom, wffa_points):
        highs = []
        for f_mhz in (1.0, 1.6, 2.1):
            a_i, a_rf = field_sensitivities(atom, wffa_points[f_mhz])
            highs.append((abs(a_i[0]), abs(a_rf[0])))
        assert highs[0][0] > highs[1][0] > highs[2][0]
        assert highs[0][1] > highs[1][1] > highs[2][1]
