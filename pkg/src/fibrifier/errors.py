"""Exception hierarchy shared by every module."""


class FibrifierError(Exception):
    pass


class IndexOutOfRange(FibrifierError):
    pass


class TargetMismatch(FibrifierError):
    pass


class NotAFibration(FibrifierError):
    pass


class NotIsofibration(FibrifierError):
    pass


class NotFibrewiseOpfibration(FibrifierError):
    pass


class IncoherentPseudoFunctor(FibrifierError):
    pass


class CapExceeded(FibrifierError):
    """A closure engine produced more elements than its cap allows."""

    def __init__(self, cap, what="morphisms"):
        super().__init__(f"more than {cap} {what} enumerated; quotient may be infinite")
        self.cap = cap
