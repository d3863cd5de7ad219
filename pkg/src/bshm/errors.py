"""Exception hierarchy shared by every module."""


class BshmError(Exception):
    """Base class for all library errors."""


class FormatError(BshmError, ValueError):
    """Malformed matrix, subset or packing text."""


class NotHadamard(BshmError):
    pass


class TooManyValues(BshmError):
    """Column inner products take more than two values."""

    def __init__(self, values, witnesses=()):
        self.values = tuple(sorted(set(values), reverse=True))
        self.witnesses = tuple(witnesses)
        super().__init__(f"column inner products take values {self.values}; witnesses {self.witnesses}")


class InconsistentKa(BshmError):
    pass


class NotAPds(BshmError):
    pass


class NotAPacking(BshmError):
    pass


class NotRegular(BshmError):
    pass


class NotStronglyRegular(BshmError):
    pass


class ParamMismatch(BshmError):
    pass


class NotUnbiased(BshmError):
    pass


class StructureViolation(BshmError):
    pass


class NoAllOnesRow(BshmError):
    pass


class BudgetExceeded(BshmError):
    pass


class SizeLimitExceeded(BudgetExceeded, ValueError):
    """Input larger than the supported maximum order or rank."""
