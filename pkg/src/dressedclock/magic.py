"""Dressed clock shift, its expansion in trap potential, and magic conditions.

The relative clock shift is expanded as
``shift(chi) = a0 + a1*chi + a2*chi^2 + a3*chi^3`` in the squared transverse
field component chi.  A second-order magic point is a pair (B_I, B_rf) where
both a1 and a2 vanish; it is found by a damped two-dimensional Newton
iteration on the fitted coefficients, continued in rf frequency from the
nearly-undressed high-frequency end.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .atom import HBAR, K_B, MU_B_HZ_PER_G, AtomSpec
from .errors import ConvergenceError
from .fields import LEFT_CIRCULAR_DELTA, TrapConfig, local_field_point
from .floquet import (
    DEFAULT_N_BLOCKS,
    full_model_offset_quasienergies,
    manifold_quasienergy_offsets,
)
from .static import _clock_offset_constant, find_static_magic_field, lande_g_factor

__all__ = [
    "ShiftExpansion",
    "MagicPoint",
    "dressed_clock_shift",
    "trap_potential",
    "fit_shift_expansion",
    "solve_magic_point",
    "magic_scan",
    "adiabaticity_margin",
]

# Fit window small enough that quartic truncation does not bias the
# located magic fields at their printed precision.
DEFAULT_CHI_MAX = 0.0625
DEFAULT_FIT_NODES = 12

# Newton convergence targets on (a1, a2); tighter than the verification
# thresholds |a1| < 0.1 Hz/G^2, |a2| < 2 Hz/G^4 so the located fields are
# accurate to the last digit rather than merely inside the thresholds.
A1_TOL = 2e-3
A2_TOL = 2e-2

# residual scales used for the damping norm
_A1_SCALE = 0.1
_A2_SCALE = 2.0

# continuation anchor: at 2.2 MHz the magic point sits next to the
# undressed magic field with a sub-mG dressing amplitude
_ANCHOR_FREQUENCY = 2.2e6
_ANCHOR_GUESS = (3.195, 8.0e-4)
_HOMOTOPY_STEP = 1e5


def _clock_quasienergy_offsets(
    atom: AtomSpec,
    trap: TrapConfig,
    chi: float,
    alpha: float,
    method: str,
    n_blocks: int,
) -> tuple[float, float]:
    """Zero-field-referenced quasienergies of the two clock states."""
    point = local_field_point(trap, chi, alpha)
    f_l, m_l = atom.clock_state_lower
    f_u, m_u = atom.clock_state_upper
    method = method.lower()
    if method == "full":
        found, _ = full_model_offset_quasienergies(atom, trap, point, n_blocks)
        q_l = found[(float(f_l), float(m_l))][0]
        q_u = found[(float(f_u), float(m_u))][0]
        # full-model values share one global reference, so the pair is
        # returned with the hyperfine splitting still inside the difference
        return q_l, q_u
    q_l = manifold_quasienergy_offsets(atom, trap, point, f_l, method, n_blocks)[
        (float(f_l), float(m_l))
    ][0]
    q_u = manifold_quasienergy_offsets(atom, trap, point, f_u, method, n_blocks)[
        (float(f_u), float(m_u))
    ][0]
    return q_l, q_u


def dressed_clock_shift(
    atom: AtomSpec,
    trap: TrapConfig,
    chi: float,
    alpha: float = 0.0,
    method: str = "wffa",
    n_blocks: int = DEFAULT_N_BLOCKS,
) -> float:
    """Relative clock shift at one trap point, Hz.

    Difference of the labelled clock-state quasienergies minus the zero-field
    hyperfine splitting.  ``method`` is "rwa", "wffa" or "full".
    """
    q_l, q_u = _clock_quasienergy_offsets(atom, trap, chi, alpha, method, n_blocks)
    if method.lower() == "full":
        return q_u - q_l - atom.hfs_frequency
    return q_u - q_l + _clock_offset_constant(atom)


def trap_potential(
    atom: AtomSpec,
    trap: TrapConfig,
    chi: float,
    alpha: float = 0.0,
    method: str = "wffa",
    state: str = "upper",
    n_blocks: int = DEFAULT_N_BLOCKS,
) -> float:
    """Adiabatic trapping potential of one clock state, Hz above the axis value."""
    if state not in ("upper", "lower"):
        raise ValueError("state must be 'upper' or 'lower'")
    f, m = atom.clock_state_upper if state == "upper" else atom.clock_state_lower
    label = (float(f), float(m))
    method_l = method.lower()

    def energy(c: float) -> float:
        point = local_field_point(trap, c, alpha)
        if method_l == "full":
            found, _ = full_model_offset_quasienergies(atom, trap, point, n_blocks)
            return found[label][0]
        return manifold_quasienergy_offsets(atom, trap, point, f, method_l, n_blocks)[label][0]

    return energy(chi) - energy(0.0)


def _chebyshev_nodes(chi_max: float, n_nodes: int) -> np.ndarray:
    j = np.arange(n_nodes)
    return chi_max * 0.5 * (1.0 - np.cos(np.pi * (2 * j + 1) / (2 * n_nodes)))


@dataclass(frozen=True)
class ShiftExpansion:
    """Cubic expansion of the clock shift in chi, with fit diagnostics.

    ``a0`` in Hz, ``a1`` in Hz/G^2, ``a2`` in Hz/G^4, ``a3`` in Hz/G^6;
    ``chi_max`` is the fitted window, ``fit_rms_residual`` the rms mismatch
    of the cubic at the fit nodes.
    """

    a0: float
    a1: float
    a2: float
    a3: float
    fit_rms_residual: float
    chi_max: float

    def evaluate(self, chi) -> np.ndarray:
        chi = np.asarray(chi, dtype=float)
        return self.a0 + chi * (self.a1 + chi * (self.a2 + chi * self.a3))


def fit_shift_expansion(
    atom: AtomSpec,
    trap: TrapConfig,
    method: str = "wffa",
    chi_max: float = DEFAULT_CHI_MAX,
    alpha: float = 0.0,
    n_nodes: int = DEFAULT_FIT_NODES,
    n_blocks: int = DEFAULT_N_BLOCKS,
) -> ShiftExpansion:
    """Least-squares cubic fit of the clock shift over chi in [0, chi_max].

    Samples the shift at Chebyshev-spaced nodes and fits in the scaled
    variable chi/chi_max for conditioning.  A residual above 10 mHz signals
    a window too wide for a cubic and triggers a warning.
    """
    if chi_max <= 0:
        raise ValueError("chi_max must be positive")
    nodes = _chebyshev_nodes(chi_max, n_nodes)
    shifts = np.array(
        [dressed_clock_shift(atom, trap, c, alpha, method, n_blocks) for c in nodes]
    )
    u = nodes / chi_max
    design = np.vander(u, 4, increasing=True)
    coeffs, *_ = np.linalg.lstsq(design, shifts, rcond=None)
    residual = design @ coeffs - shifts
    rms = float(np.sqrt(np.mean(residual**2)))
    if rms > 1e-2:
        warnings.warn(
            f"cubic fit rms residual {rms:.2e} Hz exceeds 10 mHz; "
            "the expansion window chi_max is probably too wide",
            stacklevel=2,
        )
    scale = np.array([1.0, 1 / chi_max, 1 / chi_max**2, 1 / chi_max**3])
    a = coeffs * scale
    return ShiftExpansion(
        a0=float(a[0]), a1=float(a[1]), a2=float(a[2]), a3=float(a[3]),
        fit_rms_residual=rms, chi_max=chi_max,
    )


@dataclass(frozen=True)
class MagicPoint:
    """A second-order magic trap configuration for one rf frequency."""

    rf_frequency: float
    b_ioffe_magic: float
    b_rf_magic: float
    method: str
    expansion: ShiftExpansion
    newton_iterations: int
    residual_norm: tuple[float, float]

    def trap(self, gradient: float = 200.0) -> TrapConfig:
        """The left-circularly polarized trap at this magic point."""
        return TrapConfig(
            b_ioffe=self.b_ioffe_magic,
            gradient=gradient,
            rf_amplitude=self.b_rf_magic,
            rf_frequency=self.rf_frequency,
            polarization_delta=LEFT_CIRCULAR_DELTA,
        )


def _scaled_norm(a1: float, a2: float) -> float:
    return math.hypot(a1 / _A1_SCALE, a2 / _A2_SCALE)


def _newton_magic(
    atom: AtomSpec,
    rf_frequency: float,
    guess: tuple[float, float],
    method: str,
    chi_max: float,
    alpha: float,
    n_nodes: int,
    n_blocks: int,
    a1_tol: float,
    a2_tol: float,
    max_iter: int,
    polish_steps: int = 2,
) -> MagicPoint:
    def residual(b_i: float, b_rf: float) -> tuple[float, float, ShiftExpansion]:
        trap = TrapConfig(
            b_ioffe=b_i,
            rf_amplitude=b_rf,
            rf_frequency=rf_frequency,
            polarization_delta=LEFT_CIRCULAR_DELTA,
        )
        exp = fit_shift_expansion(atom, trap, method, chi_max, alpha, n_nodes, n_blocks)
        return exp.a1, exp.a2, exp

    b_i, b_rf = guess
    a1, a2, exp = residual(b_i, b_rf)
    best = (b_i, b_rf, a1, a2, exp)
    iterations = 0
    converged = abs(a1) < a1_tol and abs(a2) < a2_tol
    remaining_polish = polish_steps

    while iterations < max_iter:
        if converged and remaining_polish <= 0:
            break
        iterations += 1
        h_i = 1e-4
        h_rf = max(1e-3 * b_rf, 1e-7)
        a1_ip, a2_ip, _ = residual(b_i + h_i, b_rf)
        a1_im, a2_im, _ = residual(b_i - h_i, b_rf)
        a1_rp, a2_rp, _ = residual(b_i, b_rf + h_rf)
        a1_rm, a2_rm, _ = residual(b_i, max(b_rf - h_rf, 0.0))
        d_rf = h_rf + min(h_rf, b_rf)
        jac = np.array(
            [
                [(a1_ip - a1_im) / (2 * h_i), (a1_rp - a1_rm) / d_rf],
                [(a2_ip - a2_im) / (2 * h_i), (a2_rp - a2_rm) / d_rf],
            ]
        )
        try:
            step = np.linalg.solve(jac, -np.array([a1, a2]))
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(
                f"singular Jacobian at (B_I={b_i:.4f} G, B_rf={b_rf:.3e} G)"
            ) from exc

        lam = 1.0
        base_norm = _scaled_norm(a1, a2)
        accepted = False
        for _ in range(7):
            cand_i = min(max(b_i + lam * step[0], 0.3), 8.0)
            cand_rf = min(max(b_rf + lam * step[1], 1e-7), 1.0)
            c_a1, c_a2, c_exp = residual(cand_i, cand_rf)
            if _scaled_norm(c_a1, c_a2) < base_norm or converged:
                b_i, b_rf, a1, a2, exp = cand_i, cand_rf, c_a1, c_a2, c_exp
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            break
        if _scaled_norm(a1, a2) < _scaled_norm(best[2], best[3]):
            best = (b_i, b_rf, a1, a2, exp)
        if converged:
            remaining_polish -= 1
        converged = abs(a1) < a1_tol and abs(a2) < a2_tol

    b_i, b_rf, a1, a2, exp = best
    if not (abs(a1) < a1_tol and abs(a2) < a2_tol):
        raise ConvergenceError(
            f"magic-point iteration stalled at a1={a1:.3e} Hz/G^2, "
            f"a2={a2:.3e} Hz/G^4 for omega/2pi={rf_frequency/1e6:.3f} MHz ({method})"
        )
    return MagicPoint(
        rf_frequency=rf_frequency,
        b_ioffe_magic=b_i,
        b_rf_magic=b_rf,
        method=method.upper(),
        expansion=exp,
        newton_iterations=iterations,
        residual_norm=(a1, a2),
    )


def solve_magic_point(
    atom: AtomSpec,
    rf_frequency: float,
    method: str = "wffa",
    initial_guess: tuple[float, float] | None = None,
    chi_max: float = DEFAULT_CHI_MAX,
    alpha: float = 0.0,
    n_nodes: int = DEFAULT_FIT_NODES,
    n_blocks: int = DEFAULT_N_BLOCKS,
    a1_tol: float = A1_TOL,
    a2_tol: float = A2_TOL,
    max_iter: int = 30,
) -> MagicPoint:
    """Solve for the second-order magic pair (B_I, B_rf) at one rf frequency.

    Without an initial guess the solution is continued frequency by
    frequency from the high-frequency anchor near the undressed magic field,
    tracking the solution branch into the strongly dressed regime.
    """
    method = method.lower()
    if method not in ("rwa", "wffa"):
        raise ValueError(f"unknown method {method!r}; expected 'rwa' or 'wffa'")

    def solve_at(freq: float, guess: tuple[float, float]) -> MagicPoint:
        return _newton_magic(
            atom, freq, guess, method, chi_max, alpha, n_nodes, n_blocks,
            a1_tol, a2_tol, max_iter,
        )

    if initial_guess is not None:
        return solve_at(rf_frequency, initial_guess)

    guess = _ANCHOR_GUESS
    freq = _ANCHOR_FREQUENCY
    point = None
    while True:
        remaining = rf_frequency - freq
        if abs(remaining) < 1e-6:
            return solve_at(rf_frequency, guess)
        point = solve_at(freq, guess)
        guess = (point.b_ioffe_magic, point.b_rf_magic)
        step = math.copysign(min(_HOMOTOPY_STEP, abs(remaining)), remaining)
        freq = freq + step


def magic_scan(
    atom: AtomSpec,
    frequencies,
    method: str = "wffa",
    chi_max: float = DEFAULT_CHI_MAX,
    n_nodes: int = DEFAULT_FIT_NODES,
    n_blocks: int = DEFAULT_N_BLOCKS,
) -> list[MagicPoint | None]:
    """Magic points for a sorted list of rf frequencies.

    The scan continues each solution from its higher-frequency neighbor and
    records per-frequency failures as None instead of aborting.
    """
    freqs = list(frequencies)
    if any(f2 < f1 for f1, f2 in zip(freqs, freqs[1:])):
        raise ValueError("frequencies must be sorted ascending")
    results: list[MagicPoint | None] = [None] * len(freqs)
    guess: tuple[float, float] | None = None
    for idx in reversed(range(len(freqs))):
        freq = freqs[idx]
        try:
            if guess is None:
                point = solve_magic_point(
                    atom, freq, method, chi_max=chi_max, n_nodes=n_nodes, n_blocks=n_blocks
                )
            else:
                point = solve_magic_point(
                    atom, freq, method, initial_guess=guess,
                    chi_max=chi_max, n_nodes=n_nodes, n_blocks=n_blocks,
                )
        except Exception as exc:  # noqa: BLE001 - per-point failures are recorded
            warnings.warn(f"magic solve failed at {freq/1e6:.3f} MHz: {exc}", stacklevel=2)
            continue
        results[idx] = point
        guess = (point.b_ioffe_magic, point.b_rf_magic)
    return results


def adiabaticity_margin(
    atom: AtomSpec,
    trap: TrapConfig,
    temperature: float,
    omega_xy: float,
) -> tuple[float, float]:
    """Adiabaticity figure of merit of a dressed trap.

    Returns ``(margin, detuning)`` where ``detuning`` is the angular
    frequency distance mu_B |g_F| B_magic / hbar - omega between the spin
    resonance at the static magic field and the drive, and ``margin`` is
    detuning^2 / (3 k_B T omega_xy / hbar).  Spin following is adiabatic when
    the margin is much larger than one.

    ``temperature`` in Kelvin, ``omega_xy`` the transverse trap angular
    frequency in rad/s.
    """
    if temperature < 0:
        raise ValueError("temperature must be non-negative")
    if omega_xy <= 0:
        raise ValueError("trap frequency must be positive")
    b_magic, _ = find_static_magic_field(atom)
    f_l = atom.clock_state_lower[0]
    resonance_hz = abs(lande_g_factor(atom, f_l)) * MU_B_HZ_PER_G * b_magic
    detuning = 2 * math.pi * (resonance_hz - trap.rf_frequency)
    if temperature == 0:
        return math.inf, detuning
    velocity_scale = 3 * K_B * temperature * omega_xy / HBAR
    return detuning**2 / velocity_scale, detuning
