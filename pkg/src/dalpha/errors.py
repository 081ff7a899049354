"""Exception types raised across the toolkit."""


class DAlphaError(Exception):
    """Base class for all toolkit errors."""


class InvalidArc(DAlphaError, ValueError):
    """A loop or an endpoint outside ``[0, n)``."""


class ArcExists(DAlphaError, ValueError):
    pass


class NotStronglyConnected(DAlphaError, ValueError):
    pass


class SizeCap(DAlphaError, ValueError):
    """An exact exponential search was asked for more vertices than allowed."""


class InvalidAlpha(DAlphaError, ValueError):
    pass


class InvalidParams(DAlphaError, ValueError):
    pass


class NegativeRadicand(DAlphaError, ArithmeticError):
    """The closed-form radicand went negative; parameters slipped past validation."""


class ConvergenceFailure(DAlphaError, RuntimeError):
    pass


class EmptyClass(DAlphaError, ValueError):
    """No strongly connected digraph on n vertices has the requested invariant."""


class ParseError(DAlphaError, ValueError):
    pass
