"""Exception hierarchy and result sentinels shared across the package."""


class MutauError(Exception):
    """Base class for every error raised by this package."""


class PolySyntaxError(MutauError, ValueError):
    def __init__(self, message, position, expected=None):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class UnknownVariable(MutauError, ValueError):
    pass


class NonPrimeCharacteristic(MutauError, ValueError):
    pass


class RingMismatch(MutauError, ValueError):
    pass


class IndexOutOfRange(MutauError, IndexError):
    pass


class NotAUnit(MutauError, ValueError):
    pass


class NotInMSquared(MutauError, ValueError):
    pass


class CharZero(MutauError, ValueError):
    pass


class NonPositiveS(MutauError, ValueError):
    pass


class BudgetExceeded(MutauError):
    """A computation ran past its configured step budget."""


class ExactDivisionFailed(MutauError):
    """Internal bug: a division that must be exact left a remainder."""


class Inconclusive(MutauError):
    """No Nakayama certificate was found up to ``n_max``."""

    def __init__(self, n_max, history=()):
        self.n_max = n_max
        self.history = tuple(history)
        super().__init__(f"no stabilization certificate up to N_max={n_max}")


class AllTrialsInfinite(MutauError):
    pass


class WindowNotReached(MutauError):
    def __init__(self, k_max):
        self.k_max = k_max
        super().__init__(f"finite differences did not stabilize up to k={k_max}")


class NotFoundWithinCap(MutauError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"no power f^e with e <= {cap} lies in j(f)")


class EmptyDeformationSpace(MutauError, ValueError):
    pass


class CheckFailure(MutauError, AssertionError):
    """A numeric self-check (grid maximum, asymptotic trend) failed."""


class _Tag:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name


INFINITE = _Tag("Infinite")
UNKNOWN = _Tag("Unknown")
UNDEFINED = _Tag("Undefined")
NOT_FOUND = _Tag("NotFoundWithinCap")
