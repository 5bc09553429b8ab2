"""Exception types shared across the package."""


class FlatSolvError(Exception):
    """Base class for all errors raised by flatsolv."""


class InvalidInputError(FlatSolvError, ValueError):
    """Input violates an operation's precondition."""


class ObstructionError(FlatSolvError):
    """No lattice exists for the requested spectrum.

    The structured obstruction is kept on ``self.obstruction``.
    """

    def __init__(self, obstruction):
        self.obstruction = obstruction
        super().__init__(str(obstruction))


class NumericalError(FlatSolvError):
    """A floating-point certification step exceeded its tolerance."""
