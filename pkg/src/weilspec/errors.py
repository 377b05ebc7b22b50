"""Exception types shared across the package."""


class WeilError(Exception):
    """Base class for all package errors."""


class NotPrime(WeilError, ValueError):
    pass


class Reducible(WeilError, ValueError):
    pass


class TooLarge(WeilError, ValueError):
    pass


class DivisionByZero(WeilError, ZeroDivisionError):
    pass


class NotCoprime(WeilError, ValueError):
    pass


class NotInvertibleExponent(WeilError, ValueError):
    pass


class MixedPrime(WeilError, ValueError):
    pass


class MixedField(WeilError, ValueError):
    pass


class BadIndex(WeilError, ValueError):
    pass


class WrongResidue(WeilError, ValueError):
    pass


class ZeroCoefficient(WeilError, ValueError):
    pass


class TooLargeK(WeilError, ValueError):
    pass


class Inconsistent(WeilError, RuntimeError):
    """An internal consistency check failed (indicates a bug)."""


class CheckFailed(WeilError, AssertionError):
    """A checked identity failed on a concrete instance."""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}" if detail else check)
