"""Exception types raised across the package."""


class EITError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(EITError, ValueError):
    pass


class DimensionError(EITError, ValueError):
    """Vector or matrix has the wrong length for the algebra in use."""


class InvalidStateError(EITError, ValueError):
    pass


class InvalidOperatorError(EITError, ValueError):
    pass


class InvalidRateError(EITError, ValueError):
    pass


class DegenerateInputError(EITError, ValueError):
    pass


class SingularEvolutionError(EITError, ArithmeticError):
    """The evolution matrix has no unique fixed point (some Re(s) = 0)."""


class StiffnessError(EITError, ArithmeticError):
    pass


class RegimeError(EITError, ValueError):
    """Probe field too strong for the linear-response susceptibility."""


class PoleError(EITError, ArithmeticError):
    def __init__(self, message, delta=None):
        super().__init__(message)
        self.delta = delta


class StencilError(EITError, ArithmeticError):
    pass


class ConfigError(EITError, ValueError):
    pass
