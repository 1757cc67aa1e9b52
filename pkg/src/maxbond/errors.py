"""Exception types shared across the toolkit."""


class MaxBondError(Exception):
    """Base class for all toolkit errors."""


class LoopEdge(MaxBondError):
    pass


class DuplicateEdge(MaxBondError):
    pass


class NodeOutOfRange(MaxBondError):
    pass


class InvalidParameter(MaxBondError):
    pass


class SizeCapExceeded(MaxBondError):
    pass


class Infeasible(MaxBondError):
    pass


class NotTwoConnected(MaxBondError):
    pass


class NotThreeConnected(MaxBondError):
    pass


class NotAFacet(MaxBondError):
    pass


class HypothesisViolated(MaxBondError):
    pass


class NotK5eMinorFree(MaxBondError):
    """Raised with the offending skeleton attached as ``.skeleton``."""

    def __init__(self, message, skeleton=None):
        super().__init__(message)
        self.skeleton = skeleton


class ArithmeticOverflow(MaxBondError):
    pass
