"""Exception hierarchy. Every error raised on bad input derives from Rank3Error."""


class Rank3Error(ValueError):
    pass


class NotFullRowRank(Rank3Error):
    pass


class BadFactorIndex(Rank3Error):
    pass


class LengthMismatch(Rank3Error):
    pass


class ShapeMismatch(Rank3Error):
    pass


class SingularFactorMatrix(Rank3Error):
    pass


class ZeroTensor(Rank3Error):
    pass


class BadShape(Rank3Error):
    pass


class NotConcisePencil(Rank3Error):
    pass


class NotConciseInput(Rank3Error):
    pass


class IncompatibleShape(Rank3Error):
    pass


class InconsistentInvariants(AssertionError):
    """Internal bookkeeping check failed; indicates a bug, never bad input."""
