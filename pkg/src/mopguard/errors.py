"""Exception hierarchy. Every error carries a stable name in ``.name``."""


class MopguardError(ValueError):
    @property
    def name(self):
        return type(self).__name__


class TooFewVertices(MopguardError):
    pass


class InvalidIndex(MopguardError):
    pass


class WrongDiagonalCount(MopguardError):
    pass


class CrossingDiagonals(MopguardError):
    pass


class NotAnEdge(MopguardError):
    pass


class NotADiagonal(MopguardError):
    pass


class NotABoundaryEdge(MopguardError):
    pass


class NotDegree2(MopguardError):
    pass


class TooSmall(MopguardError):
    pass


class TooLarge(MopguardError):
    pass


class KTooSmall(MopguardError):
    pass


class LimitExceeded(MopguardError):
    pass


class BadParams(MopguardError):
    pass


class NotSimple(MopguardError):
    pass


class Degenerate(MopguardError):
    pass


class ParseError(MopguardError):
    pass


class VerificationFailure(RuntimeError):
    """An algorithm produced a set that fails its own certificate (a bug)."""
