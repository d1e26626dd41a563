"""rf-dressed hyperfine spectra and magic trap conditions for microwave clocks.

The package computes dressed clock shifts of trapped J=1/2 alkali atoms
(87Rb by default), solves for "second-order magic" combinations of Ioffe
field and rf dressing amplitude where the shift is flat to second order in
the trap potential, and quantifies the robustness of those conditions to
field and polarization deviations.
"""

from .atom import MU_B_HZ_PER_G, AtomSpec, rubidium87
from .errors import ConvergenceError, DressedClockError, ResonanceClassificationError
from .fields import (
    LEFT_CIRCULAR_DELTA,
    FourierHamiltonian,
    LocalFieldPoint,
    RfLocalComponents,
    TrapConfig,
    build_fourier_hamiltonian,
    local_field_point,
    rf_local_components,
)
from .floquet import (
    DEFAULT_N_BLOCKS,
    FloquetMatrix,
    QuasienergyEntry,
    QuasienergySpectrum,
    assemble_floquet_matrix,
    full_model_quasienergies,
    quasienergies,
)
from .magic import (
    MagicPoint,
    ShiftExpansion,
    adiabaticity_margin,
    dressed_clock_shift,
    fit_shift_expansion,
    magic_scan,
    solve_magic_point,
    trap_potential,
)
from .robustness import (
    DeviationBudget,
    ProfileTable,
    SensitivityReport,
    field_sensitivities,
    polarization_sensitivities,
    rms_shift_deviation,
    sensitivity_report,
    shift_profile,
)
from .spin import (
    ProductBasisHamiltonian,
    SpinOperators,
    build_product_hamiltonian,
    build_spin_operators,
)
from .static import (
    breit_rabi_energy,
    breit_rabi_offset,
    find_static_magic_field,
    lande_g_factor,
    manifold_zero_field_energy,
    static_clock_shift,
)

__version__ = "0.1.0"

__all__ = [
    "AtomSpec",
    "ConvergenceError",
    "DEFAULT_N_BLOCKS",
    "DeviationBudget",
    "DressedClockError",
    "FloquetMatrix",
    "FourierHamiltonian",
    "LEFT_CIRCULAR_DELTA",
    "LocalFieldPoint",
    "MU_B_HZ_PER_G",
    "MagicPoint",
    "ProductBasisHamiltonian",
    "ProfileTable",
    "QuasienergyEntry",
    "QuasienergySpectrum",
    "ResonanceClassificationError",
    "RfLocalComponents",
    "SensitivityReport",
    "ShiftExpansion",
    "SpinOperators",
    "TrapConfig",
    "adiabaticity_margin",
    "assemble_floquet_matrix",
    "breit_rabi_energy",
    "breit_rabi_offset",
    "build_fourier_hamiltonian",
    "build_product_hamiltonian",
    "build_spin_operators",
    "dressed_clock_shift",
    "field_sensitivities",
    "find_static_magic_field",
    "fit_shift_expansion",
    "full_model_quasienergies",
    "lande_g_factor",
    "local_field_point",
    "magic_scan",
    "manifold_zero_field_energy",
    "polarization_sensitivities",
    "quasienergies",
    "rf_local_components",
    "rms_shift_deviation",
    "rubidium87",
    "sensitivity_report",
    "shift_profile",
    "solve_magic_point",
    "static_clock_shift",
    "trap_potential",
    "__version__",
]
