"""Exception types shared across the package."""


class DiaphonyError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeBase(DiaphonyError):
    """A base that must be prime is not."""

    def __init__(self, value):
        self.value = value
        super().__init__(f"base {value!r} is not a prime number")


class DuplicateBase(DiaphonyError):
    """Pairwise-distinct prime bases were required but a base repeats."""

    def __init__(self, value):
        self.value = value
        super().__init__(f"base {value} appears more than once")


class EmptyBases(DiaphonyError):
    """A nonempty list of bases was required."""

    def __init__(self):
        super().__init__("at least one base is required")


class OutOfUnitInterval(DiaphonyError):
    """A coordinate lies outside [0, 1)."""

    def __init__(self, value):
        self.value = value
        super().__init__(f"value {value!r} is not in [0, 1)")


class DimensionMismatch(DiaphonyError):
    """Vectors that must share a dimension do not."""


class BaseMismatch(DiaphonyError):
    """Digit vectors that must share a base do not."""


class CountOverflow(DiaphonyError):
    """A requested index range exceeds the supported 64-bit index space."""


class BoxTooLarge(DiaphonyError):
    """A truncation box enumerates more indices than the configured cap."""

    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"box enumerates {size} indices, cap is {cap}")


class ZeroIndex(DiaphonyError):
    """The all-zero index vector is not admissible here."""

    def __init__(self):
        super().__init__("the zero index vector is excluded")
