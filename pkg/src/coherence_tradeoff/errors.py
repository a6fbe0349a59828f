"""Exception hierarchy shared by all modules."""


class TradeoffError(Exception):
    """Base class for every error raised by this package."""


class InvalidState(TradeoffError, ValueError):
    """A matrix failed a density-matrix invariant.

    ``invariant`` names the violated condition (``"hermitian"``, ``"trace"``,
    ``"psd"``, ``"shape"``, ``"finite"``).
    """

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class NotHermitian(InvalidState):
    def __init__(self, message):
        super().__init__("hermitian", message)


class NotPSD(InvalidState):
    def __init__(self, message):
        super().__init__("psd", message)


class NoConvergence(TradeoffError, ArithmeticError):
    pass


class DefectiveSpectrum(TradeoffError, ArithmeticError):
    """The null space of rho*rho~ is smaller than its algebraic multiplicity."""


class DegenerateDecomposition(TradeoffError, ArithmeticError):
    pass


class NotTildeOrthogonal(TradeoffError, ValueError):
    pass


class BadParameter(TradeoffError, ValueError):
    pass


class SingularRatio(TradeoffError, ValueError):
    """The closed-form coherence/concurrence ratio is undefined for this Bloch vector."""

    def __init__(self, axis, message):
        super().__init__(message)
        self.axis = axis
