"""Exception hierarchy shared by every module of the toolkit."""


class LGError(Exception):
    """Base class for all toolkit errors."""


class ParseError(LGError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if text is not None and position is not None:
            message = f"{message} at position {position}: {text!r}\n{' ' * (position + 1)}^"
        super().__init__(message)


class ConstantPotential(LGError):
    pass


class NonIsolatedCritical(LGError):
    """The Jacobian quotient is infinite dimensional."""


class NotQuasiHomogeneous(LGError):
    pass


class ResourceBudgetExceeded(LGError):
    pass


class ShapeMismatch(LGError):
    pass


class MixedParity(LGError):
    pass


class NotAFactorization(LGError):
    def __init__(self, message, block=None):
        self.block = block
        super().__init__(message)


class NotClosed(LGError):
    pass


class NonConstantPhi(LGError):
    pass


class TruncationNotStable(LGError):
    pass
