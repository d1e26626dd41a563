"""Trap field geometry and the rotating-frame Fourier Hamiltonians.

A point in the Ioffe-Pritchard trap is described by chi = G^2 rho^2, the
squared transverse dc-field component, and the azimuth alpha.  The local
frame has z' along the dc field; the rf drive is decomposed in that frame and
the per-manifold Hamiltonian becomes a three-component Fourier series
H = H0 + H(+1) e^{i w t} + H(+2) e^{2 i w t} + h.c. terms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .atom import MU_B_HZ_PER_G, AtomSpec
from .spin import build_spin_operators
from .static import breit_rabi_offset, lande_g_factor, manifold_zero_field_energy

__all__ = [
    "TrapConfig",
    "LocalFieldPoint",
    "RfLocalComponents",
    "FourierHamiltonian",
    "local_field_point",
    "rf_local_components",
    "build_fourier_hamiltonian",
]

LEFT_CIRCULAR_DELTA = -math.pi / 4

# margin factor for the weak-dressing validity envelope checks
_ENVELOPE_MARGIN = 20.0


@dataclass(frozen=True)
class TrapConfig:
    """One rf-dressed Ioffe-Pritchard trap scenario.

    Attributes
    ----------
    b_ioffe:
        Axial (Ioffe) field B_I, Gauss.
    gradient:
        Transverse quadrupole gradient, Gauss/cm.  Enters only unit
        conversions between chi and physical distance.
    rf_amplitude:
        rf field amplitude B_rf, Gauss.
    rf_frequency:
        rf drive frequency omega/2pi, Hz.
    polarization_delta:
        Polarization angle delta of the rf field, rad; 0 is linear along x,
        -pi/4 is left-hand circular (the dressing configuration).
    """

    b_ioffe: float
    gradient: float = 200.0
    rf_amplitude: float = 0.0
    rf_frequency: float = 1.0e6
    polarization_delta: float = LEFT_CIRCULAR_DELTA

    def __post_init__(self):
        if self.b_ioffe <= 0:
            raise ValueError("Ioffe field must be positive")
        if self.rf_amplitude < 0:
            raise ValueError("rf amplitude must be non-negative")
        if self.rf_frequency <= 0:
            raise ValueError("rf frequency must be positive")

    def check_validity_envelope(self, atom: AtomSpec) -> None:
        """Warn when the weak-dressing assumptions are stretched thin."""
        if self.rf_amplitude * _ENVELOPE_MARGIN > self.b_ioffe:
            warnings.warn(
                f"rf amplitude {self.rf_amplitude} G is not small against the "
                f"Ioffe field {self.b_ioffe} G; weak-dressing engines may be inaccurate",
                stacklevel=2,
            )
        if MU_B_HZ_PER_G * atom.g_j * self.b_ioffe * _ENVELOPE_MARGIN > atom.hfs_frequency:
            warnings.warn(
                f"Zeeman energy at B_I={self.b_ioffe} G is not small against the "
                "hyperfine splitting; weak-field manifold separation may be inaccurate",
                stacklevel=2,
            )

    def replace(self, **changes) -> "TrapConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class LocalFieldPoint:
    """Local dc-field geometry at one trap position."""

    chi: float
    alpha: float
    b0_magnitude: float
    theta: float


def local_field_point(trap: TrapConfig, chi: float, alpha: float = 0.0) -> LocalFieldPoint:
    """Local dc field at squared transverse component chi (G^2), azimuth alpha."""
    if chi < 0:
        raise ValueError("chi must be non-negative")
    transverse = math.sqrt(chi)
    b0 = math.hypot(trap.b_ioffe, transverse)
    theta = math.atan2(transverse, trap.b_ioffe)
    return LocalFieldPoint(chi=chi, alpha=alpha, b0_magnitude=b0, theta=theta)


@dataclass(frozen=True)
class RfLocalComponents:
    """Complex rf amplitudes along the local-frame axes, Gauss."""

    bx_prime: complex
    by_prime: complex
    bz_prime: complex

    def total_amplitude(self) -> float:
        return math.sqrt(
            abs(self.bx_prime) ** 2 + abs(self.by_prime) ** 2 + abs(self.bz_prime) ** 2
        )


def rf_local_components(trap: TrapConfig, point: LocalFieldPoint) -> RfLocalComponents:
    """Resolve the rf drive in the frame whose z' axis follows the dc field."""
    delta = trap.polarization_delta
    ca, sa = math.cos(point.alpha), math.sin(point.alpha)
    ct, st = math.cos(point.theta), math.sin(point.theta)
    cd, sd = math.cos(delta), math.sin(delta)
    b = trap.rf_amplitude
    bx = b * (ca * ct * cd - 1j * sa * ct * sd)
    by = b * (ca * sd - 1j * sa * cd)
    bz = b * (ca * st * cd - 1j * sa * st * sd)
    return RfLocalComponents(bx_prime=bx, by_prime=by, bz_prime=bz)


@dataclass(frozen=True)
class FourierHamiltonian:
    """Fourier components of one manifold's rotating-frame Hamiltonian, Hz.

    ``h0`` is Hermitian; the negative-frequency components are the adjoints
    of ``h_plus1`` and ``h_plus2``.  Matrices are written in the
    descending-m basis of the manifold, and the h0 diagonal carries the
    absolute Breit-Rabi energies plus the rotating-frame shift s*m*(omega/2pi)
    with s = +1 for the lower manifold and s = -1 for the upper one.
    """

    manifold: float
    h0: np.ndarray
    h_plus1: np.ndarray
    h_plus2: np.ndarray

    @property
    def dim(self) -> int:
        return self.h0.shape[0]


def _fourier_blocks(
    atom: AtomSpec,
    trap: TrapConfig,
    point: LocalFieldPoint,
    manifold: float,
    zero_reference: bool,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Shared assembly for the public matrices and the engine-internal ones.

    With ``zero_reference`` the diagonal is referenced to the zero-field
    manifold energy, which keeps quasienergy arithmetic far from the GHz
    hyperfine scale.
    """
    sign = atom.manifold_sign(manifold)
    # rotating-frame sense: +omega*m on the lower manifold, -omega*m on the upper
    s = -sign
    g_f = lande_g_factor(atom, manifold)
    ops = build_spin_operators(manifold)
    m = ops.m_values()

    diag = np.array(
        [breit_rabi_offset(atom, manifold, mv, point.b0_magnitude) for mv in m]
    )
    diag = diag + s * trap.rf_frequency * m
    if not zero_reference:
        diag = diag + manifold_zero_field_energy(atom, manifold)

    rf = rf_local_components(trap, point)
    c0 = rf.bx_prime - s * rf.by_prime
    ladder0 = ops.f_plus if s > 0 else ops.f_minus
    coupling = (MU_B_HZ_PER_G * g_f / 4.0) * (ladder0 * c0 + ladder0.conj().T * np.conj(c0))
    h0 = np.diag(diag).astype(complex) + coupling

    h1 = (MU_B_HZ_PER_G * g_f / 2.0) * rf.bz_prime * ops.fz

    # Counter-rotating component: opposite ladder operator with the
    # conjugate-sense amplitude bx' + s*by'.  A circular drive co-rotating
    # with a manifold therefore has no 2-omega term for that manifold, and
    # appears purely at 2-omega for the counter-rotating manifold; this
    # pairing is what matches the untransformed-Hamiltonian engine.
    ladder2 = ops.f_minus if s > 0 else ops.f_plus
    c2 = rf.bx_prime + s * rf.by_prime
    h2 = (MU_B_HZ_PER_G * g_f / 4.0) * ladder2 * c2

    return h0, h1, h2


def build_fourier_hamiltonian(
    atom: AtomSpec, trap: TrapConfig, point: LocalFieldPoint, manifold: float
) -> FourierHamiltonian:
    """Assemble the three Fourier components for one hyperfine manifold.

    Raises ValueError when ``manifold`` is not one of the atom's two
    hyperfine manifolds.
    """
    atom.validate_state(manifold, manifold)
    h0, h1, h2 = _fourier_blocks(atom, trap, point, manifold, zero_reference=False)
    for a in (h0, h1, h2):
        a.flags.writeable = False
    return FourierHamiltonian(manifold=manifold, h0=h0, h_plus1=h1, h_plus2=h2)
