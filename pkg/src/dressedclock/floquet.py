"""Truncated Floquet block matrices and quasienergy classification.

The quasienergy spectrum of a periodically driven level scheme is obtained
by diagonalizing the block matrix whose (k, m) block is H^(k-m)/h plus
k * (omega/2pi) on the diagonal blocks.  Eigenvalues whose eigenvectors
concentrate in the central (photon index 0) block are the "true"
quasienergies that connect continuously to the undriven spectrum; they are
labelled by the dominant bare state inside that block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .atom import MU_B_HZ_PER_G, AtomSpec
from .errors import ResonanceClassificationError
from .fields import FourierHamiltonian, LocalFieldPoint, TrapConfig, _fourier_blocks
from .spin import build_product_hamiltonian, build_spin_operators
from .static import breit_rabi_energy

__all__ = [
    "FloquetMatrix",
    "QuasienergyEntry",
    "QuasienergySpectrum",
    "assemble_floquet_matrix",
    "quasienergies",
    "full_model_quasienergies",
]

DEFAULT_N_BLOCKS = 21

_CENTRAL_WEIGHT_MIN = 0.5


@dataclass(frozen=True)
class FloquetMatrix:
    """A truncated Floquet block matrix, energies in Hz.

    ``state_labels[i]`` gives the (manifold, m) label of basis state i of
    every block; ``block_photon_index`` lists the photon index of each block
    row, from -(n_blocks-1)/2 to +(n_blocks-1)/2.
    """

    manifold_dim: int
    n_blocks: int
    matrix: np.ndarray
    block_photon_index: tuple[int, ...]
    state_labels: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class QuasienergyEntry:
    manifold: float
    m_label: float
    quasienergy: float
    central_weight: float


@dataclass(frozen=True)
class QuasienergySpectrum:
    """Labelled true quasienergies of one diagonalization."""

    entries: tuple[QuasienergyEntry, ...]

    def get(self, manifold: float, m: float) -> QuasienergyEntry:
        for e in self.entries:
            if abs(e.manifold - manifold) < 1e-9 and abs(e.m_label - m) < 1e-9:
                return e
        raise KeyError(f"no labelled quasienergy for state ({manifold}, {m})")

    def energy(self, manifold: float, m: float) -> float:
        return self.get(manifold, m).quasienergy


def _floquet_block_matrix(
    components: dict[int, np.ndarray], n_blocks: int, rf_frequency: float
) -> tuple[np.ndarray, tuple[int, ...]]:
    """Dense Floquet matrix from positive-n Fourier components.

    ``components`` maps n >= 0 to H^(n); negative components are adjoints.
    """
    if n_blocks < 3 or n_blocks % 2 == 0:
        raise ValueError(f"n_blocks must be an odd integer >= 3, got {n_blocks}")
    dim = components[0].shape[0]
    k_values = tuple(range(-(n_blocks - 1) // 2, (n_blocks - 1) // 2 + 1))
    total = dim * n_blocks
    matrix = np.zeros((total, total), dtype=complex)
    eye = np.eye(dim)
    max_n = max(components.keys())
    for i, k in enumerate(k_values):
        row = slice(i * dim, (i + 1) * dim)
        matrix[row, row] = components[0] + k * rf_frequency * eye
        for n in range(1, max_n + 1):
            if n not in components:
                continue
            j = i - n
            if j >= 0:
                # block column with photon index k - n: holds H^(+n)
                matrix[row, slice(j * dim, (j + 1) * dim)] = components[n]
            j = i + n
            if j < n_blocks:
                matrix[row, slice(j * dim, (j + 1) * dim)] = components[n].conj().T
    return matrix, k_values


def assemble_floquet_matrix(
    components: FourierHamiltonian, n_blocks: int, rf_frequency: float
) -> FloquetMatrix:
    """Assemble the truncated Floquet matrix of one manifold.

    The matrix has dimension (2F+1) * n_blocks and is Hermitian by
    construction; blocks farther than two photon indices apart vanish.
    """
    comp = {0: components.h0, 1: components.h_plus1, 2: components.h_plus2}
    matrix, k_values = _floquet_block_matrix(comp, n_blocks, rf_frequency)
    matrix.flags.writeable = False
    m_values = build_spin_operators(components.manifold).m_values()
    labels = tuple((components.manifold, float(m)) for m in m_values)
    return FloquetMatrix(
        manifold_dim=components.dim,
        n_blocks=n_blocks,
        matrix=matrix,
        block_photon_index=k_values,
        state_labels=labels,
    )


def _classify_central(
    matrix: np.ndarray,
    dim: int,
    n_blocks: int,
    labels: tuple[tuple[float, float], ...],
) -> dict[tuple[float, float], tuple[float, float]]:
    """Label eigenpairs by their dominant central-block component.

    Returns a map label -> (quasienergy, central_weight) containing exactly
    one entry per basis label; raises ResonanceClassificationError when the
    central-block weights cannot support that labelling.
    """
    evals, evecs = np.linalg.eigh(matrix)
    c = (n_blocks - 1) // 2
    central = evecs[c * dim : (c + 1) * dim, :]
    weights = np.einsum("ij,ij->j", np.abs(central), np.abs(central))
    found: dict[tuple[float, float], tuple[float, float]] = {}
    for idx in np.nonzero(weights > _CENTRAL_WEIGHT_MIN)[0]:
        lab = labels[int(np.argmax(np.abs(central[:, idx]) ** 2))]
        if lab in found:
            raise ResonanceClassificationError(
                f"two eigenvectors share the dominant central component {lab}; "
                "the operating point sits on a multiphoton resonance"
            )
        found[lab] = (float(evals[idx]), float(weights[idx]))
    if len(found) < dim:
        missing = [lab for lab in labels if lab not in found]
        raise ResonanceClassificationError(
            f"only {len(found)} of {dim} quasienergies have central weight > "
            f"{_CENTRAL_WEIGHT_MIN} (missing {missing}); likely a multiphoton resonance"
        )
    return found


def quasienergies(matrix: FloquetMatrix) -> QuasienergySpectrum:
    """Diagonalize a Floquet matrix and classify the true quasienergies."""
    found = _classify_central(
        matrix.matrix, matrix.manifold_dim, matrix.n_blocks, matrix.state_labels
    )
    entries = tuple(
        QuasienergyEntry(manifold=lab[0], m_label=lab[1], quasienergy=q, central_weight=w)
        for lab, (q, w) in sorted(found.items())
    )
    return QuasienergySpectrum(entries=entries)


def _classify_bare(
    h0: np.ndarray, labels: tuple[tuple[float, float], ...]
) -> dict[tuple[float, float], tuple[float, float]]:
    """Rotating-wave analog of the central-block classification.

    Each eigenvector must put more than half of its weight on a single bare
    state to receive that state's label.
    """
    evals, evecs = np.linalg.eigh(h0)
    found: dict[tuple[float, float], tuple[float, float]] = {}
    comp = np.abs(evecs) ** 2
    for idx in range(len(evals)):
        w = comp[:, idx].max()
        if w <= _CENTRAL_WEIGHT_MIN:
            continue
        lab = labels[int(np.argmax(comp[:, idx]))]
        if lab in found:
            raise ResonanceClassificationError(
                f"two dressed eigenvectors share the dominant bare state {lab}"
            )
        found[lab] = (float(evals[idx]), float(w))
    if len(found) < len(labels):
        missing = [lab for lab in labels if lab not in found]
        raise ResonanceClassificationError(
            f"dressed states too strongly mixed to label (missing {missing})"
        )
    return found


def manifold_quasienergy_offsets(
    atom: AtomSpec,
    trap: TrapConfig,
    point: LocalFieldPoint,
    manifold: float,
    method: str = "wffa",
    n_blocks: int = DEFAULT_N_BLOCKS,
) -> dict[tuple[float, float], tuple[float, float]]:
    """Labelled quasienergies of one manifold, referenced to its zero-field energy.

    The zero-field reference keeps the returned values at the Zeeman/drive
    scale, which preserves precision in clock-shift differences.  ``method``
    selects the engine: "rwa" keeps only the static Fourier component,
    "wffa" diagonalizes the truncated Floquet matrix of all components.
    """
    h0, h1, h2 = _fourier_blocks(atom, trap, point, manifold, zero_reference=True)
    m_values = build_spin_operators(manifold).m_values()
    labels = tuple((float(manifold), float(m)) for m in m_values)
    method = method.lower()
    if method == "rwa":
        return _classify_bare(h0, labels)
    if method == "wffa":
        matrix, _ = _floquet_block_matrix({0: h0, 1: h1, 2: h2}, n_blocks, trap.rf_frequency)
        return _classify_central(matrix, len(labels), n_blocks, labels)
    raise ValueError(f"unknown method {method!r}; expected 'rwa' or 'wffa'")


def _all_state_labels(atom: AtomSpec) -> list[tuple[float, float]]:
    labels = []
    for f in (atom.f_lower, atom.f_upper):
        m = f
        while m >= -f - 1e-9:
            labels.append((float(f), float(m)))
            m -= 1
    return labels


def full_model_offset_quasienergies(
    atom: AtomSpec,
    trap: TrapConfig,
    point: LocalFieldPoint,
    n_blocks: int = DEFAULT_N_BLOCKS,
) -> tuple[dict[tuple[float, float], tuple[float, float]], float]:
    """Floquet treatment of the untransformed product-basis Hamiltonian.

    The static part is the full hyperfine + Zeeman Hamiltonian at the local
    field; the drive enters through its two lab-frame Fourier components.
    Returns the labelled quasienergies relative to the hyperfine center of
    gravity shift ``offset`` (add it back for absolute energies).
    """
    ph = build_product_hamiltonian(atom)
    transverse = math.sqrt(point.chi)
    b_vec = (
        transverse * math.cos(point.alpha),
        transverse * math.sin(point.alpha),
        trap.b_ioffe,
    )
    h_static = ph.static_hamiltonian(b_vec)
    # symmetrize the spectrum about zero to keep quasienergies well scaled
    offset = -atom.hfs_frequency / (2 * (2 * atom.i_spin + 1))
    h_static = h_static - offset * np.eye(ph.dim)

    evals, w = np.linalg.eigh(h_static)
    expected = sorted(
        (breit_rabi_energy(atom, f, m, point.b0_magnitude) - offset, (f, m))
        for f, m in _all_state_labels(atom)
    )
    labels = []
    for eig, (e_ref, lab) in zip(evals, expected):
        if abs(eig - e_ref) > max(1e-6 * abs(e_ref), 1e-3):
            raise RuntimeError(
                f"static eigenvalue {eig} does not match Breit-Rabi energy {e_ref} "
                f"for state {lab}"
            )
        labels.append(lab)

    delta = trap.polarization_delta
    h_drive = (trap.rf_amplitude / 2.0) * (
        math.cos(delta) * ph.h_zeeman_x - 1j * math.sin(delta) * ph.h_zeeman_y
    )
    h0 = np.diag(evals).astype(complex)
    h1 = w.conj().T @ h_drive @ w
    matrix, _ = _floquet_block_matrix({0: h0, 1: h1}, n_blocks, trap.rf_frequency)
    found = _classify_central(matrix, ph.dim, n_blocks, tuple(labels))
    return found, offset


def full_model_quasienergies(
    atom: AtomSpec,
    trap: TrapConfig,
    point: LocalFieldPoint,
    n_blocks: int = DEFAULT_N_BLOCKS,
) -> QuasienergySpectrum:
    """Labelled absolute quasienergies of the full 8-level driven system.

    This is the reference engine used to validate the weak-field
    approximations: it makes no rotating-frame or manifold-separation
    approximation beyond the Floquet truncation itself.
    """
    found, offset = full_model_offset_quasienergies(atom, trap, point, n_blocks)
    entries = tuple(
        QuasienergyEntry(
            manifold=lab[0], m_label=lab[1], quasienergy=q + offset, central_weight=wt
        )
        for lab, (q, wt) in sorted(found.items())
    )
    return QuasienergySpectrum(entries=entries)
