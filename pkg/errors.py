"""
Exception hierarchy for composable-qm
"""


class ComposableError(Exception):
    """Base class for every error raised by the toolkit"""


class ScalarError(ComposableError):
    """Mixed unit squares or division by a non-invertible scalar"""


class DimensionError(ComposableError):
    """Phase-space dimension or matrix size mismatch"""


class TowerError(ComposableError):
    """Element lives on the wrong scalar tower for its composability class"""


class CompositionError(ComposableError):
    """Attempt to compose elements or pairs of different composability classes"""


class ParseError(ComposableError):
    """Syntax error in a polynomial or scalar literal"""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class SolverError(ComposableError):
    """Inconsistent constraint system"""


class StateError(ComposableError):
    """Density matrix is not a valid state"""


class UnsupportedSpectrumError(ComposableError):
    """Spectrum requested for a split-complex matrix that is not diagonal"""
