"""Sensitivity of the dressed clock shift to field and polarization errors.

The expansion coefficients respond to a relative Ioffe-field deviation, a
relative rf-amplitude deviation, and a polarization offset epsilon away from
perfect left-hand circular.  The polarization response carries a cos(2 alpha)
angular structure at first order in epsilon and an isotropic quadratic term.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .atom import AtomSpec
from .errors import DressedClockError
from .fields import TrapConfig
from .magic import MagicPoint, dressed_clock_shift, fit_shift_expansion, trap_potential

__all__ = [
    "DeviationBudget",
    "SensitivityReport",
    "ProfileTable",
    "field_sensitivities",
    "polarization_sensitivities",
    "sensitivity_report",
    "rms_shift_deviation",
    "shift_profile",
]

FIELD_STEP_REL = 1e-3
POLARIZATION_STEP = math.radians(0.5)
_N_ALPHA = 8


@dataclass(frozen=True)
class DeviationBudget:
    """RMS control-error magnitudes of one apparatus.

    ``rel_ioffe`` and ``rel_rf`` are relative field deviations; the
    polarization offset is in radians.
    """

    rel_ioffe: float = 0.0
    rel_rf: float = 0.0
    polarization_offset: float = 0.0

    def __post_init__(self):
        if self.rel_ioffe < 0 or self.rel_rf < 0 or self.polarization_offset < 0:
            raise ValueError("deviation budget entries are RMS magnitudes and must be >= 0")


@dataclass(frozen=True)
class SensitivityReport:
    """Full sensitivity coefficient set of one magic point.

    ``alpha_ioffe[i]`` and ``alpha_rf[i]`` are the responses of expansion
    coefficient i to a unit relative deviation of the Ioffe and rf field;
    ``beta`` holds the cos(2 alpha) polarization responses of coefficients
    1 and 2 (the i=0 response vanishes identically and its numerical residual
    is reported separately); ``gamma`` holds the quadratic responses.
    """

    rf_frequency: float
    method: str
    alpha_ioffe: tuple[float, float, float]
    alpha_rf: tuple[float, float, float]
    beta: tuple[float, float]
    gamma: tuple[float, float, float]
    beta0_residual: float
    field_step_rel: float
    polarization_step_rad: float


def _expansion_coefficients(
    atom: AtomSpec,
    trap: TrapConfig,
    method: str,
    chi_max: float,
    alpha: float,
    n_blocks: int,
) -> np.ndarray:
    exp = fit_shift_expansion(atom, trap, method, chi_max, alpha, n_blocks=n_blocks)
    return np.array([exp.a0, exp.a1, exp.a2])


def field_sensitivities(
    atom: AtomSpec,
    magic: MagicPoint,
    step_rel: float = FIELD_STEP_REL,
    chi_max: float | None = None,
    n_blocks: int = 21,
) -> tuple[np.ndarray, np.ndarray]:
    """Responses of (a0, a1, a2) to relative Ioffe and rf field deviations.

    Central differences of fresh expansion fits at B*(1 +/- step_rel);
    returned per unit relative deviation, so alpha_i * dB/B is the coefficient
    change.
    """
    trap = magic.trap()
    window = chi_max if chi_max is not None else magic.expansion.chi_max
    method = magic.method.lower()

    def coeffs(**changes) -> np.ndarray:
        return _expansion_coefficients(atom, trap.replace(**changes), method, window, 0.0, n_blocks)

    alpha_ioffe = (
        coeffs(b_ioffe=trap.b_ioffe * (1 + step_rel))
        - coeffs(b_ioffe=trap.b_ioffe * (1 - step_rel))
    ) / (2 * step_rel)
    alpha_rf = (
        coeffs(rf_amplitude=trap.rf_amplitude * (1 + step_rel))
        - coeffs(rf_amplitude=trap.rf_amplitude * (1 - step_rel))
    ) / (2 * step_rel)
    return alpha_ioffe, alpha_rf


def _polarization_coefficient_table(
    atom: AtomSpec,
    magic: MagicPoint,
    epsilon_step: float,
    n_alpha: int,
    chi_max: float | None,
    n_blocks: int,
) -> tuple[np.ndarray, np.ndarray]:
    """cos(2 alpha) projections and alpha means of A_i(epsilon, alpha).

    Returns (beta_full, gamma_full) for coefficients i = 0, 1, 2.
    """
    trap = magic.trap()
    window = chi_max if chi_max is not None else magic.expansion.chi_max
    method = magic.method.lower()
    alphas = np.arange(n_alpha) * (2 * math.pi / n_alpha)
    cos2a = np.cos(2 * alphas)

    def sample(eps: float) -> np.ndarray:
        t = trap.replace(polarization_delta=trap.polarization_delta + eps)
        rows = [
            _expansion_coefficients(atom, t, method, window, a, n_blocks) for a in alphas
        ]
        return np.array(rows)  # shape (n_alpha, 3)

    plus = sample(+epsilon_step)
    minus = sample(-epsilon_step)
    base = _expansion_coefficients(atom, trap, method, window, 0.0, n_blocks)

    proj_plus = (2.0 / n_alpha) * cos2a @ plus
    proj_minus = (2.0 / n_alpha) * cos2a @ minus
    beta_full = (proj_plus - proj_minus) / (2 * epsilon_step)

    mean_plus = plus.mean(axis=0)
    mean_minus = minus.mean(axis=0)
    gamma_full = (mean_plus - 2 * base + mean_minus) / epsilon_step**2
    return beta_full, gamma_full


def polarization_sensitivities(
    atom: AtomSpec,
    magic: MagicPoint,
    epsilon_step: float = POLARIZATION_STEP,
    n_alpha: int = _N_ALPHA,
    chi_max: float | None = None,
    n_blocks: int = 21,
) -> tuple[np.ndarray, np.ndarray]:
    """Polarization responses (beta_1, beta_2) and (gamma_0, gamma_1, gamma_2).

    beta_i is extracted by projecting A_i(epsilon, alpha) on cos(2 alpha)
    over an evenly spaced alpha grid and antisymmetrizing in epsilon; gamma_i
    from the alpha-averaged symmetric second difference in epsilon.
    """
    beta_full, gamma_full = _polarization_coefficient_table(
        atom, magic, epsilon_step, n_alpha, chi_max, n_blocks
    )
    return beta_full[1:], gamma_full


def sensitivity_report(
    atom: AtomSpec,
    magic: MagicPoint,
    field_step_rel: float = FIELD_STEP_REL,
    epsilon_step: float = POLARIZATION_STEP,
    n_alpha: int = _N_ALPHA,
    n_blocks: int = 21,
) -> SensitivityReport:
    """Assemble the full sensitivity coefficient set of one magic point."""
    alpha_ioffe, alpha_rf = field_sensitivities(
        atom, magic, step_rel=field_step_rel, n_blocks=n_blocks
    )
    beta_full, gamma_full = _polarization_coefficient_table(
        atom, magic, epsilon_step, n_alpha, None, n_blocks
    )
    return SensitivityReport(
        rf_frequency=magic.rf_frequency,
        method=magic.method,
        alpha_ioffe=tuple(float(x) for x in alpha_ioffe),
        alpha_rf=tuple(float(x) for x in alpha_rf),
        beta=tuple(float(x) for x in beta_full[1:]),
        gamma=tuple(float(x) for x in gamma_full),
        beta0_residual=float(beta_full[0]),
        field_step_rel=field_step_rel,
        polarization_step_rad=epsilon_step,
    )


def _shift_linear_responses(
    atom: AtomSpec,
    trap: TrapConfig,
    budget: DeviationBudget,
    chi: float,
    alpha: float,
    method: str,
    n_blocks: int,
    step_rel: float = FIELD_STEP_REL,
    epsilon_step: float = POLARIZATION_STEP,
) -> tuple[float, float, float]:
    """The three linearized shift deviations entering the rms sum, Hz."""

    def shift(t: TrapConfig) -> float:
        return dressed_clock_shift(atom, t, chi, alpha, method, n_blocks)

    term_ioffe = term_rf = term_pol = 0.0
    if budget.rel_ioffe:
        plus = shift(trap.replace(b_ioffe=trap.b_ioffe * (1 + step_rel)))
        minus = shift(trap.replace(b_ioffe=trap.b_ioffe * (1 - step_rel)))
        term_ioffe = (plus - minus) / (2 * step_rel) * budget.rel_ioffe
    if budget.rel_rf and trap.rf_amplitude > 0:
        plus = shift(trap.replace(rf_amplitude=trap.rf_amplitude * (1 + step_rel)))
        minus = shift(trap.replace(rf_amplitude=trap.rf_amplitude * (1 - step_rel)))
        term_rf = (plus - minus) / (2 * step_rel) * budget.rel_rf
    if budget.polarization_offset and trap.rf_amplitude > 0:
        plus = shift(trap.replace(polarization_delta=trap.polarization_delta + epsilon_step))
        minus = shift(trap.replace(polarization_delta=trap.polarization_delta - epsilon_step))
        term_pol = (plus - minus) / (2 * epsilon_step) * budget.polarization_offset
    return term_ioffe, term_rf, term_pol


def rms_shift_deviation(
    atom: AtomSpec,
    magic: MagicPoint | TrapConfig,
    budget: DeviationBudget,
    chi: float,
    alpha: float = 0.0,
    method: str | None = None,
    n_blocks: int = 21,
) -> float:
    """RMS deviation of the clock shift under the control-error budget, Hz.

    Quadrature sum of the linear responses to the Ioffe field, the rf
    amplitude and the polarization offset, each evaluated by central
    differences at the given trap point.
    """
    if isinstance(magic, MagicPoint):
        trap = magic.trap()
        method = method or magic.method.lower()
    else:
        trap = magic
        method = method or "wffa"
    terms = _shift_linear_responses(atom, trap, budget, chi, alpha, method, n_blocks)
    return math.sqrt(sum(t * t for t in terms))


@dataclass(frozen=True)
class ProfileTable:
    """Shift-versus-potential profile rows, ready for plotting or CSV export."""

    u_trap: np.ndarray
    shift: np.ndarray
    rms_dev: np.ndarray
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.u_trap)


def _chi_for_potential(
    atom: AtomSpec,
    trap: TrapConfig,
    u_target: float,
    method: str,
    state: str,
    n_blocks: int,
) -> float:
    """Invert the monotone chi -> U_trap map by bisection."""
    if u_target <= 0:
        return 0.0

    def u_of(chi: float) -> float:
        return trap_potential(atom, trap, chi, 0.0, method, state, n_blocks)

    hi = 0.1
    for _ in range(60):
        if u_of(hi) >= u_target:
            break
        hi *= 1.7
    else:
        raise DressedClockError(f"couldn't bracket U_trap={u_target} Hz")
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if u_of(mid) < u_target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-9 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def shift_profile(
    atom: AtomSpec,
    magic: MagicPoint | TrapConfig,
    budget: DeviationBudget | None = None,
    u_trap_max: float = 2.0e4,
    n_points: int = 40,
    method: str | None = None,
    state: str = "upper",
    alpha: float = 0.0,
    n_blocks: int = 21,
) -> ProfileTable:
    """Tabulate (U_trap, shift - shift(0), rms deviation) along the trap radius.

    ``magic`` may be a solved magic point or any trap configuration (an
    undressed trap uses ``rf_amplitude=0``).  Rows where the quasienergy
    classification fails truncate the profile with a warning.
    """
    if isinstance(magic, MagicPoint):
        trap = magic.trap()
        method = method or magic.method.lower()
    else:
        trap = magic
        method = method or "wffa"
    if u_trap_max < 0:
        raise ValueError("u_trap_max must be non-negative")
    budget = budget or DeviationBudget()

    if u_trap_max == 0:
        chis = np.array([0.0])
    else:
        chi_max = _chi_for_potential(atom, trap, u_trap_max, method, state, n_blocks)
        chis = np.linspace(0.0, chi_max, n_points)

    shift0 = dressed_clock_shift(atom, trap, 0.0, alpha, method, n_blocks)
    us, shifts, devs = [], [], []
    truncated = False
    for chi in chis:
        try:
            u = trap_potential(atom, trap, chi, alpha, method, state, n_blocks)
            s = dressed_clock_shift(atom, trap, chi, alpha, method, n_blocks) - shift0
            d = (
                rms_shift_deviation(atom, trap, budget, chi, alpha, method, n_blocks)
                if (budget.rel_ioffe or budget.rel_rf or budget.polarization_offset)
                else 0.0
            )
        except DressedClockError as exc:
            warnings.warn(
                f"profile truncated at chi={chi:.4f} G^2: {exc}", stacklevel=2
            )
            truncated = True
            break
        us.append(u)
        shifts.append(s)
        devs.append(d)
    return ProfileTable(
        u_trap=np.array(us), shift=np.array(shifts), rms_dev=np.array(devs), truncated=truncated
    )
