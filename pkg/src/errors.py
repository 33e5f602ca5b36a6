"""
Exception hierarchy for the symmetry testing toolkit
Library code raises these; the CLI maps them to exit codes
"""


class SymtestError(Exception):
    """Base class for all toolkit errors"""


class ConfigurationError(SymtestError, ValueError):
    """Invalid configuration value"""


class UnsupportedDimensionError(SymtestError, ValueError):
    """Operation only defined for a fixed ambient dimension"""


class InvalidDiagramError(SymtestError, ValueError):
    """Not a Young diagram of the requested depth"""


class UnknownIrrepError(SymtestError, KeyError):
    """Subgroup irrep label absent from a branching table"""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InconsistencyError(SymtestError, ArithmeticError):
    """Numerical oracle disagrees with an exact invariant"""


class SizeGuardError(SymtestError, ValueError):
    """Requested object exceeds the configured size limits"""


class NonHermitianError(SymtestError, ValueError):
    """Matrix fails the Hermiticity check"""


class NonPSDError(SymtestError, ValueError):
    """Operator has negative eigenvalues beyond tolerance"""


class ConvergenceError(SymtestError, RuntimeError):
    """Eigendecomposition residual exceeds its bound"""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class RangeError(SymtestError, ValueError):
    """Target lies outside the supported search range"""


class EmbeddingError(SymtestError, RuntimeError):
    """Schur-basis embedding leaks out of its irrep block"""


class OutputPathError(SymtestError, OSError):
    """Output file cannot be written"""
