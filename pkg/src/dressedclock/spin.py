"""Angular-momentum operator matrices and the ground-manifold Hamiltonian.

Basis conventions (fixed so that matrix fixtures are stable):

* single-spin matrices are written in the basis |m> with m descending,
  m = F, F-1, ..., -F, so ``fz`` is ``diag(F, ..., -F)`` and the ladder
  operator ``f_plus`` lives on the superdiagonal;
* the product basis |m_J, m_I> is ordered lexicographically with m_J as
  the outer index, both descending (plain Kronecker ordering).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .atom import MU_B_HZ_PER_G, AtomSpec

__all__ = [
    "SpinOperators",
    "ProductBasisHamiltonian",
    "build_spin_operators",
    "build_product_hamiltonian",
]


def _freeze(*arrays: np.ndarray) -> None:
    for a in arrays:
        a.flags.writeable = False


@dataclass(frozen=True)
class SpinOperators:
    """Spin-F operator matrices in units of hbar.

    Attributes
    ----------
    f_total:
        The spin quantum number F (non-negative half-integer).
    fx, fy, fz:
        Cartesian components, complex (2F+1) x (2F+1) matrices.
    f_plus, f_minus:
        Ladder operators, ``f_plus = fx + 1j*fy`` and its adjoint.
    """

    f_total: float
    fx: np.ndarray
    fy: np.ndarray
    fz: np.ndarray
    f_plus: np.ndarray
    f_minus: np.ndarray

    @property
    def dim(self) -> int:
        return self.fz.shape[0]

    def m_values(self) -> np.ndarray:
        """Projection quantum numbers in basis order (descending)."""
        return np.real(np.diag(self.fz)).copy()


def build_spin_operators(f_total: float) -> SpinOperators:
    """Construct the spin-F matrices for a given total spin.

    Parameters
    ----------
    f_total:
        Spin quantum number; 2*f_total must be a non-negative integer.

    Returns
    -------
    SpinOperators
        Matrices in the descending-m basis. The ladder matrix elements are
        <m+1|F+|m> = sqrt(F(F+1) - m(m+1)).
    """
    two_f = round(2 * f_total)
    if abs(2 * f_total - two_f) > 1e-12 or two_f < 0:
        raise ValueError(f"spin must be a non-negative half-integer, got {f_total}")
    f = two_f / 2.0
    dim = two_f + 1
    m = f - np.arange(dim)

    fz = np.diag(m).astype(complex)
    f_plus = np.zeros((dim, dim), dtype=complex)
    # row i holds m[i] = m[i+1] + 1, so F+ couples column i+1 into row i
    for i in range(dim - 1):
        f_plus[i, i + 1] = np.sqrt(f * (f + 1) - m[i + 1] * (m[i + 1] + 1))
    f_minus = f_plus.conj().T.copy()
    fx = (f_plus + f_minus) / 2
    fy = (f_plus - f_minus) / 2j

    _freeze(fx, fy, fz, f_plus, f_minus)
    return SpinOperators(f_total=f, fx=fx, fy=fy, fz=fz, f_plus=f_plus, f_minus=f_minus)


@dataclass(frozen=True)
class ProductBasisHamiltonian:
    """Hyperfine and Zeeman operators of the ground manifold, in Hz and Hz/G.

    ``h_hfs`` is the hyperfine contact interaction; ``h_zeeman_x/y/z`` are the
    Zeeman couplings for a unit (1 G) field along each lab axis, so the full
    static Hamiltonian at field B is ``h_hfs + Bx*h_zeeman_x + ...``.
    """

    dim: int
    h_hfs: np.ndarray
    h_zeeman_x: np.ndarray
    h_zeeman_y: np.ndarray
    h_zeeman_z: np.ndarray

    def zeeman(self, b_vector) -> np.ndarray:
        """Zeeman matrix (Hz) for a field vector (Bx, By, Bz) in Gauss."""
        bx, by, bz = b_vector
        return bx * self.h_zeeman_x + by * self.h_zeeman_y + bz * self.h_zeeman_z

    def static_hamiltonian(self, b_vector) -> np.ndarray:
        return self.h_hfs + self.zeeman(b_vector)


def build_product_hamiltonian(atom: AtomSpec) -> ProductBasisHamiltonian:
    """Assemble the hyperfine + Zeeman operators in the |m_J, m_I> basis.

    Only J=1/2 atoms are supported; the hyperfine term is the contact
    interaction (hfs_frequency / 2) * J.I whose eigenvalues split into the
    two hyperfine manifolds separated by hfs_frequency.
    """
    if abs(atom.j_spin - 0.5) > 1e-12:
        raise ValueError(f"only J=1/2 atoms are supported, got J={atom.j_spin}")

    jop = build_spin_operators(atom.j_spin)
    iop = build_spin_operators(atom.i_spin)
    eye_j = np.eye(jop.dim)
    eye_i = np.eye(iop.dim)

    def prod(a, b):
        return np.kron(a, b)

    j_dot_i = (
        prod(jop.fx, iop.fx) + prod(jop.fy, iop.fy) + prod(jop.fz, iop.fz)
    )
    h_hfs = (atom.hfs_frequency / 2.0) * j_dot_i

    zeeman = []
    for jk, ik in ((jop.fx, iop.fx), (jop.fy, iop.fy), (jop.fz, iop.fz)):
        zeeman.append(MU_B_HZ_PER_G * (atom.g_j * prod(jk, eye_i) + atom.g_i * prod(eye_j, ik)))
    h_zx, h_zy, h_zz = zeeman

    _freeze(h_hfs, h_zx, h_zy, h_zz)
    return ProductBasisHamiltonian(
        dim=jop.dim * iop.dim,
        h_hfs=h_hfs,
        h_zeeman_x=h_zx,
        h_zeeman_y=h_zy,
        h_zeeman_z=h_zz,
    )
