"""Exception types shared across the package."""


class DressedClockError(Exception):
    """Base class for numerical failures of this package."""


class ResonanceClassificationError(DressedClockError):
    """Quasienergy labelling failed, typically near a multiphoton resonance."""


class ConvergenceError(DressedClockError):
    """An iterative solver exhausted its iteration budget."""
