"""Atomic species data for J=1/2 alkali ground states.

Unit conventions used throughout the package:

* all energies are ordinary frequencies E/h in Hz,
* all magnetic fields are in Gauss,
* all angles are in radians.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import scipy.constants as _const

# Bohr magneton over Planck constant, Hz per Gauss (CODATA, printed at the
# precision the field/energy bookkeeping of this package relies on).
MU_B_HZ_PER_G = 1.3996245e6

K_B = _const.k
HBAR = _const.hbar

# Ground-state constants of 87Rb.  The hyperfine splitting is the standard
# reference value; both g factors carry the sign convention of the Zeeman
# term mu_B * (g_J J + g_I I) . B.
RB87_G_J = 2.00233113
RB87_G_I = -0.0009951414
RB87_HFS_HZ = 6.834682611e9


def _is_half_integer(x: float) -> bool:
    return abs(2 * x - round(2 * x)) < 1e-12 and x >= 0


@dataclass(frozen=True)
class AtomSpec:
    """A J=1/2 alkali atom and its pair of clock states.

    Clock states are labelled ``(f_tilde, m)`` in the adiabatic basis; the
    defaults are the 87Rb clock pair |F=1, m=-1> and |F=2, m=+1>.
    """

    i_spin: float = 1.5
    j_spin: float = 0.5
    g_j: float = RB87_G_J
    g_i: float = RB87_G_I
    hfs_frequency: float = RB87_HFS_HZ
    clock_state_lower: tuple[float, int] = (1, -1)
    clock_state_upper: tuple[float, int] = (2, 1)

    def __post_init__(self):
        if not _is_half_integer(self.i_spin):
            raise ValueError(f"nuclear spin must be a non-negative half-integer, got {self.i_spin}")
        if not _is_half_integer(self.j_spin):
            raise ValueError(f"electronic spin must be a non-negative half-integer, got {self.j_spin}")
        if self.hfs_frequency <= 0:
            raise ValueError("hyperfine splitting must be positive")
        for f, m in (self.clock_state_lower, self.clock_state_upper):
            self.validate_state(f, m)

    @property
    def f_lower(self) -> float:
        return abs(self.i_spin - self.j_spin)

    @property
    def f_upper(self) -> float:
        return self.i_spin + self.j_spin

    @property
    def dim(self) -> int:
        """Number of ground-manifold Zeeman states, (2J+1)(2I+1)."""
        return int(round((2 * self.j_spin + 1) * (2 * self.i_spin + 1)))

    def validate_state(self, f_tilde: float, m: float) -> None:
        """Raise ValueError unless (f_tilde, m) labels a ground-manifold state."""
        if abs(f_tilde - self.f_lower) > 1e-9 and abs(f_tilde - self.f_upper) > 1e-9:
            raise ValueError(
                f"f_tilde must be {self.f_lower} or {self.f_upper}, got {f_tilde}"
            )
        if abs(m) > f_tilde + 1e-9 or abs(m - round(2 * m) / 2) > 1e-9 or abs(2 * m) % 2 != abs(2 * f_tilde) % 2:
            raise ValueError(f"invalid projection m={m} for f_tilde={f_tilde}")

    def manifold_sign(self, f_tilde: float) -> int:
        """+1 for the upper hyperfine manifold (F = I+J), -1 for the lower."""
        self.validate_state(f_tilde, f_tilde)
        return 1 if abs(f_tilde - self.f_upper) < 1e-9 else -1

    def replace(self, **changes) -> "AtomSpec":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "i_spin": self.i_spin,
            "j_spin": self.j_spin,
            "g_j": self.g_j,
            "g_i": self.g_i,
            "hfs_frequency": self.hfs_frequency,
            "clock_state_lower": list(self.clock_state_lower),
            "clock_state_upper": list(self.clock_state_upper),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AtomSpec":
        kwargs = dict(data)
        for key in ("clock_state_lower", "clock_state_upper"):
            if key in kwargs:
                f, m = kwargs[key]
                kwargs[key] = (f, m)
        return cls(**kwargs)


def rubidium87() -> AtomSpec:
    """The default atom: ground state of 87Rb."""
    return AtomSpec()
