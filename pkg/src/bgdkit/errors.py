"""Exception hierarchy shared by every module of the package."""


class BgdError(Exception):
    """Base class; ``witness`` is an optional basis multi-index (1-based)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DimensionMismatch(BgdError):
    pass


class NoSolution(BgdError):
    pass


class NotBalanced(BgdError):
    pass


class NoDual(BgdError):
    pass


class CommutationFailure(BgdError):
    pass


class ConditionFailure(BgdError):
    """A named compatibility condition such as (Lc), (Rc), (Cc) does not hold."""

    def __init__(self, message, condition, witness=None):
        super().__init__(message, witness)
        self.condition = condition


class Condition1Failure(ConditionFailure):
    def __init__(self, message, witness=None):
        super().__init__(message, "1i", witness)


class Condition1iiFailure(ConditionFailure):
    def __init__(self, message, witness=None):
        super().__init__(message, "1ii", witness)


class IdentificationFailure(BgdError):
    pass


class BudgetExceeded(BgdError):
    pass


class UnsupportedField(BgdError):
    pass


class UnknownCatalogId(BgdError):
    pass


class MalformedInput(BgdError):
    pass
