"""Closed-form hyperfine Zeeman energies and the static magic field.

The clock shift is a ~kHz difference between ~GHz level energies, so the
routines here evaluate Zeeman energies relative to the zero-field manifold
energy with a cancellation-free square-root form.  Absolute energies are
available through :func:`breit_rabi_energy`.
"""

from __future__ import annotations

import math

from scipy.optimize import minimize_scalar

from .atom import MU_B_HZ_PER_G, AtomSpec

__all__ = [
    "breit_rabi_energy",
    "breit_rabi_offset",
    "manifold_zero_field_energy",
    "lande_g_factor",
    "static_clock_shift",
    "find_static_magic_field",
]

# finite-difference steps for derivatives of the clock shift, in Gauss
_STEP_POLISH = 1e-4
_STEP_CURVATURE = 1e-3


def _field_parameter(atom: AtomSpec, b0: float) -> float:
    """Dimensionless Zeeman strength (g_J - g_I) mu_B B / (h * hfs)."""
    return (atom.g_j - atom.g_i) * MU_B_HZ_PER_G * b0 / atom.hfs_frequency


def manifold_zero_field_energy(atom: AtomSpec, f_tilde: float) -> float:
    """Zero-field energy of a hyperfine manifold, Hz.

    The hyperfine contact interaction puts the upper manifold at
    +hfs*I/(2I+1)... expressed via the manifold sign: -hfs/(2(2I+1)) +/- hfs/2.
    """
    sign = atom.manifold_sign(f_tilde)
    two_i_plus_1 = 2 * atom.i_spin + 1
    return -atom.hfs_frequency / (2 * two_i_plus_1) + sign * atom.hfs_frequency / 2


def breit_rabi_offset(atom: AtomSpec, f_tilde: float, m: float, b0: float) -> float:
    """Zeeman energy of |f_tilde, m> relative to its zero-field manifold, Hz.

    Evaluated as g_I mu_B m B +/- (hfs/2) * (sqrt(1 + 4mX/(2I+1) + X^2) - 1)
    with the sqrt(1+u)-1 term computed as u / (1 + sqrt(1+u)), which stays
    accurate when the Zeeman energy is many orders below the hyperfine
    splitting.
    """
    atom.validate_state(f_tilde, m)
    if b0 < 0:
        raise ValueError("field magnitude must be non-negative")
    sign = atom.manifold_sign(f_tilde)
    x = _field_parameter(atom, b0)
    u = x * (4 * m / (2 * atom.i_spin + 1) + x)
    radicand = 1.0 + u
    if radicand < 0:
        raise ValueError(f"Breit-Rabi radicand negative for state ({f_tilde}, {m}) at {b0} G")
    sqrt_minus_one = u / (1.0 + math.sqrt(radicand))
    return atom.g_i * MU_B_HZ_PER_G * m * b0 + sign * (atom.hfs_frequency / 2) * sqrt_minus_one


def breit_rabi_energy(atom: AtomSpec, f_tilde: float, m: float, b0: float) -> float:
    """Absolute Breit-Rabi energy of |f_tilde, m> at field b0, Hz.

    Zero of energy is the center of gravity of the hyperfine interaction.
    For the stretched states the radicand is a perfect square and the
    positive square-root branch is taken.
    """
    return manifold_zero_field_energy(atom, f_tilde) + breit_rabi_offset(atom, f_tilde, m, b0)


def lande_g_factor(atom: AtomSpec, f: float) -> float:
    """Lande factor of hyperfine manifold f, including the nuclear term."""
    atom.validate_state(f, f)
    if f == 0:
        raise ValueError("g_F is undefined for an F=0 manifold")
    ff = f * (f + 1)
    ii = atom.i_spin * (atom.i_spin + 1)
    jj = atom.j_spin * (atom.j_spin + 1)
    return atom.g_j * (ff - ii + jj) / (2 * ff) + atom.g_i * (ff + ii - jj) / (2 * ff)


def _clock_offset_constant(atom: AtomSpec) -> float:
    """Residual of E_upper(0) - E_lower(0) - hfs for the configured clock pair.

    Exactly zero for a cross-manifold pair; kept explicit so that clock
    shifts computed from manifold-relative energies stay exact.
    """
    s_u = atom.manifold_sign(atom.clock_state_upper[0])
    s_l = atom.manifold_sign(atom.clock_state_lower[0])
    return (atom.hfs_frequency / 2) * (s_u - s_l) - atom.hfs_frequency


def static_clock_shift(atom: AtomSpec, b0: float) -> float:
    """Undressed clock shift: E_upper - E_lower - hfs at field b0, in Hz."""
    f_l, m_l = atom.clock_state_lower
    f_u, m_u = atom.clock_state_upper
    return (
        breit_rabi_offset(atom, f_u, m_u, b0)
        - breit_rabi_offset(atom, f_l, m_l, b0)
        + _clock_offset_constant(atom)
    )


def _shift_derivative(atom: AtomSpec, b0: float, step: float) -> float:
    return (static_clock_shift(atom, b0 + step) - static_clock_shift(atom, max(b0 - step, 0.0))) / (
        step + min(step, b0)
    )


def _shift_curvature(atom: AtomSpec, b0: float, step: float = _STEP_CURVATURE) -> float:
    lo = max(b0 - step, 0.0)
    hi = b0 + step
    h = (hi - lo) / 2
    mid = (hi + lo) / 2
    return (
        static_clock_shift(atom, hi) - 2 * static_clock_shift(atom, mid) + static_clock_shift(atom, lo)
    ) / h**2


def find_static_magic_field(atom: AtomSpec, b_max: float = 10.0) -> tuple[float, float]:
    """Locate the stationary point of the undressed clock shift.

    Returns
    -------
    (b_magic, curvature):
        Field of the stationary point in Gauss and the second derivative of
        the clock shift there, Hz/G^2.

    Raises
    ------
    RuntimeError
        If no stationary point of the shift is bracketed inside (0, b_max),
        which signals unphysical atom parameters.
    """
    res = minimize_scalar(
        lambda b: static_clock_shift(atom, b), bounds=(0.0, b_max), method="bounded",
        options={"xatol": 1e-6},
    )
    b = float(res.x)

    # Newton steps below ~1e-8 G are finite-difference noise; stop there,
    # comfortably inside the 1e-7 G location target.
    for _ in range(60):
        deriv = _shift_derivative(atom, b, _STEP_POLISH)
        curv = _shift_curvature(atom, b)
        if curv <= 0:
            raise RuntimeError("clock shift is not convex near the candidate minimum")
        step = -deriv / curv
        b_new = min(max(b + step, 0.0), b_max)
        if abs(b_new - b) < 2e-8:
            b = b_new
            break
        b = b_new
    else:
        raise RuntimeError("stationary-point polish did not converge")

    if b <= 0.0 + 1e-9:
        # candidate pinned at zero field (e.g. vanishing nuclear moment);
        # only a true stationary point there counts (the one-sided probe
        # carries an O(curvature * step) truncation floor)
        if abs(_shift_derivative(atom, 0.0, _STEP_POLISH)) > 1.0:
            raise RuntimeError(
                "no stationary point of the clock shift bracketed; check atom parameters"
            )
        return 0.0, _shift_curvature(atom, _STEP_CURVATURE)
    if not (0.0 < b < b_max - 1e-6):
        raise RuntimeError(
            "no stationary point of the clock shift bracketed; check atom parameters"
        )
    return b, _shift_curvature(atom, b)
