"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one ``[ACCEPTANCE n] PASS/FAIL`` line (visible with
``pytest -s`` or in failure output) before asserting, so a red criterion
still reports its measured numbers.
"""

import math
import time

import numpy as np
import pytest

from published_values import (
    STATIC_CURVATURE,
    STATIC_MAGIC_FIELD,
    STATIC_SHIFT_AT_MAGIC,
    TABLE1,
    UNDRESSED_A0,
    UNDRESSED_A2,
    UNDRESSED_A3,
    last_digit_tolerance,
)

from dressedclock import (
    DeviationBudget,
    MU_B_HZ_PER_G,
    TrapConfig,
    adiabaticity_margin,
    dressed_clock_shift,
    find_static_magic_field,
    fit_shift_expansion,
    lande_g_factor,
    local_field_point,
    static_clock_shift,
)
from dressedclock.fields import LEFT_CIRCULAR_DELTA
from dressedclock.floquet import manifold_quasienergy_offsets
from dressedclock.robustness import (
    _chi_for_potential,
    field_sensitivities,
    polarization_sensitivities,
    rms_shift_deviation,
)


def report(number: int, ok: bool, description: str, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[ACCEPTANCE {number:>2}] {status}  {description}"
    if detail:
        line += f"  ({detail})"
    print(line)


def _undressed_trap(atom) -> TrapConfig:
    b_magic, _ = find_static_magic_field(atom)
    return TrapConfig(b_ioffe=b_magic, rf_amplitude=0.0, rf_frequency=1.0e6,
                      polarization_delta=LEFT_CIRCULAR_DELTA)


def _shift_rise_at_potential(atom, trap, u_trap, method):
    """|shift(chi(U)) - shift(0)| with chi found by inverting the potential."""
    chi = _chi_for_potential(atom, trap, u_trap, method, "upper", 21)
    rise = (
        dressed_clock_shift(atom, trap, chi, 0.0, method)
        - dressed_clock_shift(atom, trap, 0.0, 0.0, method)
    )
    return abs(rise), chi


def test_criterion_1_static_magic_field(atom):
    start = time.monotonic()
    b_magic, curvature = find_static_magic_field(atom)
    elapsed = time.monotonic() - start
    shift = static_clock_shift(atom, b_magic)
    ok_field = abs(b_magic - STATIC_MAGIC_FIELD) <= 1e-5
    ok_shift = abs(shift - STATIC_SHIFT_AT_MAGIC) <= 0.05
    ok_curv = abs(curvature - STATIC_CURVATURE) <= 1.0
    ok_time = elapsed < 1.0
    ok = ok_field and ok_shift and ok_curv and ok_time
    report(
        1, ok,
        "static magic field, shift and curvature",
        f"B={b_magic:.6f} G [{'ok' if ok_field else 'off'}], "
        f"shift={shift:.3f} Hz vs {STATIC_SHIFT_AT_MAGIC} [{'ok' if ok_shift else 'off by '+format(abs(shift-STATIC_SHIFT_AT_MAGIC), '.4f')+' Hz'}], "
        f"curvature={curvature:.2f} [{'ok' if ok_curv else 'off'}], {elapsed*1e3:.0f} ms",
    )
    assert ok


def test_criterion_2_undressed_expansion(atom):
    exp = fit_shift_expansion(atom, _undressed_trap(atom), method="rwa")
    ok_a0 = abs(exp.a0 - UNDRESSED_A0) <= 0.1
    ok_a2 = abs(exp.a2 - UNDRESSED_A2) <= 0.1
    ok_a3 = abs(exp.a3 - UNDRESSED_A3) <= 0.05
    ok = ok_a0 and ok_a2 and ok_a3
    report(
        2, ok,
        "undressed expansion coefficients at the magic field",
        f"a0={exp.a0:.2f}, a2={exp.a2:.3f}, a3={exp.a3:.3f}",
    )
    assert ok


def test_criterion_3_table_reproduction(atom, rwa_points, wffa_points, scan_timings):
    mismatches = []
    for freq_mhz, row in TABLE1.items():
        for method, points in (("rwa", rwa_points), ("wffa", wffa_points)):
            bi_str, brf_str = row[method]
            point = points[freq_mhz]
            if point is None:
                mismatches.append(f"{method}@{freq_mhz}: no convergence")
                continue
            if abs(point.b_ioffe_magic - float(bi_str)) > last_digit_tolerance(bi_str):
                mismatches.append(
                    f"{method}@{freq_mhz}: B_I {point.b_ioffe_magic:.5f} vs {bi_str}"
                )
            if abs(point.b_rf_magic - float(brf_str)) > last_digit_tolerance(brf_str):
                mismatches.append(
                    f"{method}@{freq_mhz}: B_rf {point.b_rf_magic:.7f} vs {brf_str}"
                )
    elapsed = scan_timings.get("rwa", 0.0) + scan_timings.get("wffa", 0.0)
    ok = not mismatches and elapsed < 600.0
    report(
        3, ok,
        "published magic-field table, 18 frequencies x 2 methods, last digit +/-1",
        f"{36 - len(mismatches)}/36 values match, scans took {elapsed:.0f} s"
        + ("" if not mismatches else "; " + "; ".join(mismatches[:4])),
    )
    assert ok


def test_criterion_4_full_model_oracle_equivalence(atom, wffa_points):
    worst_a1 = worst_a2 = 0.0
    for point in wffa_points.values():
        exp = fit_shift_expansion(atom, point.trap(), method="full")
        worst_a1 = max(worst_a1, abs(exp.a1))
        worst_a2 = max(worst_a2, abs(2 * exp.a2))
    ok = worst_a1 <= 0.1 and worst_a2 <= 3.0
    report(
        4, ok,
        "8-level engine confirms flatness at every WFFA magic point",
        f"max |dE/dchi|={worst_a1:.3f} Hz/G^2 (<=0.1), "
        f"max |d2E/dchi2|={worst_a2:.3f} Hz/G^4 (<=3)",
    )
    assert ok


def test_criterion_5_circular_selectivity(atom, wffa_points):
    point = wffa_points[2.0]
    trap = point.trap()
    field_point = local_field_point(trap, 0.0)

    dressed = manifold_quasienergy_offsets(atom, trap, field_point, 2, "wffa")
    bare = manifold_quasienergy_offsets(
        atom, trap.replace(rf_amplitude=0.0), field_point, 2, "wffa"
    )
    drive_dependence = max(
        abs(dressed[label][0] - bare[label][0]) for label in dressed
    )
    ok_independent = drive_dependence <= 1e-6

    spreads = []
    for chi in (0.0, 0.2):
        sets = []
        for alpha in (0.0, 1.3, 2.7):
            p = local_field_point(trap, chi, alpha)
            values = []
            for manifold in (1, 2):
                offs = manifold_quasienergy_offsets(atom, trap, p, manifold, "wffa")
                values.extend(v[0] for v in offs.values())
            sets.append(np.sort(values))
        scale = max(1.0, np.max(np.abs(sets[0])))
        spreads.append(max(np.max(np.abs(s - sets[0])) for s in sets[1:]) / scale)
    ok_alpha = max(spreads) <= 1e-9

    ok = ok_independent and ok_alpha
    report(
        5, ok,
        "left-circular drive: upper-manifold drive-independence and axial symmetry",
        f"max upper-manifold quasienergy change with B_rf = {drive_dependence:.3e} Hz "
        f"(criterion 1e-6; counter-rotating response is physical, see notes), "
        f"alpha spread {max(spreads):.1e} rel",
    )
    assert ok


def test_criterion_6_scaling_laws(atom, wffa_points):
    def log_slope(trap, method):
        u_values = np.geomspace(5e3, 5e4, 7)
        rises = []
        for u in u_values:
            rise, _ = _shift_rise_at_potential(atom, trap, u, method)
            rises.append(rise)
        return float(np.polyfit(np.log(u_values), np.log(rises), 1)[0])

    slope_undressed = log_slope(_undressed_trap(atom), "rwa")
    slope_dressed = log_slope(wffa_points[1.1].trap(), "wffa")
    ok_u = abs(slope_undressed - 2.0) <= 0.05
    ok_d = abs(slope_dressed - 3.0) <= 0.05
    ok = ok_u and ok_d
    report(
        6, ok,
        "log-log scaling of the shift against trap potential",
        f"undressed slope {slope_undressed:.3f} (2.00 +/- 0.05), "
        f"dressed slope {slope_dressed:.3f} (3.00 +/- 0.05)",
    )
    assert ok


def test_criterion_7_beta0_vanishes(atom, wffa_points):
    residuals = {}
    for freq_mhz in (1.0, 1.5, 2.0):
        point = wffa_points[freq_mhz]
        from dressedclock.robustness import _polarization_coefficient_table

        beta_full, _ = _polarization_coefficient_table(
            atom, point, math.radians(0.5), 8, None, 21
        )
        residuals[freq_mhz] = abs(beta_full[0])
    ok = all(r < 1e-3 for r in residuals.values())
    report(
        7, ok,
        "beta_0 polarization response vanishes at three magic points",
        ", ".join(f"{f} MHz: {r:.1e} Hz/rad" for f, r in residuals.items()),
    )
    assert ok


def test_criterion_8_adiabaticity_numbers(atom):
    trap = TrapConfig(b_ioffe=3.2, rf_amplitude=0.0, rf_frequency=2.0e6)
    margin, detuning = adiabaticity_margin(atom, trap, 1e-6, 2 * math.pi * 2e3)
    resonance_mhz = (trap.rf_frequency + detuning / (2 * math.pi)) / 1e6
    thermal_khz = math.sqrt(detuning**2 / margin) / (2 * math.pi) / 1e3
    ok_res = abs(resonance_mhz - 2.26) <= 0.01
    ok_thermal = abs(thermal_khz - 11.0) <= 1.0
    ok = ok_res and ok_thermal
    report(
        8, ok,
        "adiabaticity reference numbers",
        f"resonance {resonance_mhz:.4f} MHz (2.26 +/- 0.01), "
        f"thermal scale 2 pi x {thermal_khz:.2f} kHz (11 +/- 1)",
    )
    assert ok


def test_criterion_9_fluctuation_study(atom, wffa_points):
    budget = DeviationBudget(
        rel_ioffe=2.5e-4, rel_rf=5e-4, polarization_offset=math.radians(0.2)
    )
    u_probe = 2.0e4
    undressed = _undressed_trap(atom)

    rise_u, chi_u = _shift_rise_at_potential(atom, undressed, u_probe, "rwa")
    dev_u = rms_shift_deviation(atom, undressed, budget, chi_u, method="rwa")
    metric_undressed = rise_u + dev_u

    best_clean = 0.0
    best_clean_freq = None
    for freq_mhz, point in wffa_points.items():
        rise, _ = _shift_rise_at_potential(atom, point.trap(), u_probe, "wffa")
        ratio = rise_u / rise
        if ratio > best_clean:
            best_clean, best_clean_freq = ratio, freq_mhz

    best_budget = 0.0
    best_budget_freq = None
    for freq_mhz in (1.8, 1.9, 2.0, 2.1, 2.2):
        trap = wffa_points[freq_mhz].trap()
        rise, chi = _shift_rise_at_potential(atom, trap, u_probe, "wffa")
        dev = rms_shift_deviation(atom, trap, budget, chi, method="wffa")
        ratio = metric_undressed / (rise + dev)
        if ratio > best_budget:
            best_budget, best_budget_freq = ratio, freq_mhz

    ok_clean = best_clean >= 50.0
    ok_budget = best_budget >= 8.0
    ok = ok_clean and ok_budget
    report(
        9, ok,
        "dressed-trap advantage at U_trap = 20 kHz",
        f"no budget: x{best_clean:.0f} at {best_clean_freq} MHz (>=50); "
        f"with budget: x{best_budget:.1f} at {best_budget_freq} MHz (>=8)",
    )
    assert ok


def test_criterion_10_convergence_properties(atom, wffa_points):
    # truncation stability of the labelled quasienergies, 21 vs 31 blocks
    worst_truncation = 0.0
    for freq_mhz in (0.5, 1.2, 2.2):
        trap = wffa_points[freq_mhz].trap()
        point = local_field_point(trap, 0.1, 0.0)
        for manifold in (1, 2):
            q21 = manifold_quasienergy_offsets(atom, trap, point, manifold, "wffa", 21)
            q31 = manifold_quasienergy_offsets(atom, trap, point, manifold, "wffa", 31)
            for label in q21:
                worst_truncation = max(
                    worst_truncation, abs(q21[label][0] - q31[label][0])
                )
    full_21 = dressed_clock_shift(atom, wffa_points[0.5].trap(), 0.1, 0.0, "full", 21)
    full_31 = dressed_clock_shift(atom, wffa_points[0.5].trap(), 0.1, 0.0, "full", 31)
    worst_truncation = max(worst_truncation, abs(full_21 - full_31))
    ok_blocks = worst_truncation < 1e-3

    # Richardson stability of the sensitivity coefficients under halved steps
    point = wffa_points[1.5]
    a_i1, a_rf1 = field_sensitivities(atom, point, step_rel=1e-3)
    a_i2, a_rf2 = field_sensitivities(atom, point, step_rel=5e-4)
    beta1, gamma1 = polarization_sensitivities(atom, point, epsilon_step=math.radians(0.5))
    beta2, gamma2 = polarization_sensitivities(atom, point, epsilon_step=math.radians(0.25))

    def max_rel_change(before, after):
        before = np.asarray(before)
        after = np.asarray(after)
        floor = 1e-3 * np.max(np.abs(before))
        return float(np.max(np.abs(after - before) / np.maximum(np.abs(before), floor)))

    worst_sensitivity = max(
        max_rel_change(a_i1, a_i2),
        max_rel_change(a_rf1, a_rf2),
        max_rel_change(beta1, beta2),
        max_rel_change(gamma1, gamma2),
    )
    ok_steps = worst_sensitivity < 0.05
    ok = ok_blocks and ok_steps
    report(
        10, ok,
        "truncation and finite-difference convergence",
        f"max quasienergy change 21->31 blocks {worst_truncation:.1e} Hz (<1e-3); "
        f"max sensitivity change under halved steps {worst_sensitivity*100:.2f}% (<5%)",
    )
    assert ok
