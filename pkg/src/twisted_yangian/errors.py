"""Exception hierarchy shared by all modules."""


class TwistedYangianError(Exception):
    """Base class for every error raised by the package."""


class InvalidIndexError(TwistedYangianError, ValueError):
    pass


class PoleError(TwistedYangianError, ZeroDivisionError):
    """A function was evaluated at one of its poles."""


class DegeneratePairError(TwistedYangianError, ValueError):
    """Two-pole function with coinciding poles (identically zero)."""


class ContractError(TwistedYangianError, ValueError):
    """An input violates a documented precondition."""


class QuadratureError(TwistedYangianError, ArithmeticError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConvergenceError(TwistedYangianError, ArithmeticError):
    """Newton iteration did not converge; carries the best iterate."""

    def __init__(self, message, best=None, history=None):
        super().__init__(message)
        self.best = best
        self.history = list(history or [])


class CollisionError(ConvergenceError):
    pass


class DegenerateEquationError(TwistedYangianError, ArithmeticError):
    """The equation for a root is satisfied identically (no isolated solution)."""


class RepresentationError(TwistedYangianError, ValueError):
    pass


class SizeError(TwistedYangianError, ValueError):
    pass
