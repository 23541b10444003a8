"""Exact base-p digit arithmetic and the character systems built on it.

Point coordinates live in [0, 1) as finite digit expansions over a prime
base, so character evaluations reduce to modular integer arithmetic and
come out as exact rational phases.  Floating point enters only when a
phase is finally converted to a complex number.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BaseMismatch,
    DimensionMismatch,
    NonPrimeBase,
    OutOfUnitInterval,
)

__all__ = [
    "DigitVector",
    "PhaseRational",
    "Point",
    "PrimeBases",
    "IndexVector",
    "is_prime",
    "monna",
    "monna_inverse",
    "float_to_digits",
    "default_depth",
    "padic_phase",
    "walsh_phase",
    "char_phase_total",
    "char_product",
    "phase_to_complex",
    "point_from_values",
]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Trial-division primality test; cached because bases repeat heavily."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _require_prime(p) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise NonPrimeBase(p)


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                n //= f
            return n == 1
        f += 1
    return True  # n itself is prime


@dataclass(frozen=True)
class DigitVector:
    """A coordinate in [0, 1) as a finite base-p expansion.

    ``digits[j-1]`` is the coefficient of ``base**-j``.  Trailing zeros are
    trimmed on construction, so the empty tuple is the unique representation
    of 0 and equality of values is structural equality of fields.
    """

    base: int
    digits: tuple[int, ...] = ()

    def __post_init__(self):
        _require_prime(self.base)
        digits = tuple(self.digits)
        while digits and digits[-1] == 0:
            digits = digits[:-1]
        for d in digits:
            if not isinstance(d, int) or not 0 <= d < self.base:
                raise ValueError(f"digit {d!r} out of range for base {self.base}")
        object.__setattr__(self, "digits", digits)

    def digit(self, j: int) -> int:
        """The j-th digit, 1-indexed; positions past the expansion are 0."""
        if j < 1:
            raise ValueError("digit positions are 1-indexed")
        return self.digits[j - 1] if j <= len(self.digits) else 0

    def value(self) -> Fraction:
        """Exact value sum_j digits[j] * base**-j, in [0, 1)."""
        num = 0
        for d in self.digits:
            num = num * self.base + d
        return Fraction(num, self.base ** len(self.digits))

    def __float__(self) -> float:
        return float(self.value())


@dataclass(frozen=True)
class PhaseRational:
    """A unit-modulus complex number stored as its exact phase q in [0, 1).

    The represented value is e^(2*pi*i*q) with q = numerator/denominator.
    The phase is reduced mod 1 and to lowest terms; a reduced denominator is
    always 1 or a prime power, which construction enforces.
    """

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        q = Fraction(self.numerator, self.denominator) % 1
        if q.denominator != 1 and not _is_prime_power(q.denominator):
            raise ValueError(f"denominator {q.denominator} is not a prime power")
        object.__setattr__(self, "numerator", q.numerator)
        object.__setattr__(self, "denominator", q.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def conjugate(self) -> PhaseRational:
        """Phase of the complex conjugate: -q mod 1."""
        return PhaseRational(-self.numerator, self.denominator)

    def value(self) -> complex:
        return phase_to_complex(self.as_fraction())


@dataclass(frozen=True)
class Point:
    """An s-dimensional point; coordinate i is a DigitVector in its own base."""

    coords: tuple[DigitVector, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise DimensionMismatch("a point needs at least one coordinate")
        object.__setattr__(self, "coords", coords)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def values(self) -> tuple[Fraction, ...]:
        return tuple(c.value() for c in self.coords)


@dataclass(frozen=True)
class PrimeBases:
    """Per-dimension prime bases.

    Construction checks primality only; operations that require pairwise
    distinct bases (Halton generation, the sequence bounds) check
    distinctness themselves via :meth:`require_distinct`.
    """

    primes: tuple[int, ...]

    def __post_init__(self):
        from .errors import EmptyBases

        primes = tuple(self.primes)
        if not primes:
            raise EmptyBases()
        for p in primes:
            _require_prime(p)
        object.__setattr__(self, "primes", primes)

    @property
    def dimension(self) -> int:
        return len(self.primes)

    def require_distinct(self) -> None:
        from .errors import DuplicateBase

        seen = set()
        for p in self.primes:
            if p in seen:
                raise DuplicateBase(p)
            seen.add(p)


@dataclass(frozen=True)
class IndexVector:
    """A vector of nonnegative character indices, one per dimension."""

    indices: tuple[int, ...]

    def __post_init__(self):
        indices = tuple(self.indices)
        if not indices:
            raise DimensionMismatch("an index vector needs at least one entry")
        for k in indices:
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"index {k!r} must be a nonnegative integer")
        object.__setattr__(self, "indices", indices)

    @property
    def dimension(self) -> int:
        return len(self.indices)

    @property
    def is_zero(self) -> bool:
        return all(k == 0 for k in self.indices)


def monna(n: int, p: int) -> DigitVector:
    """Reflect n's base-p expansion across the radix point (radical inverse).

    n = sum_r z_r p**r maps to the coordinate sum_r z_r p**(-r-1).
    """
    _require_prime(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(r)
    return DigitVector(p, tuple(digits))


def monna_inverse(x: DigitVector) -> int:
    """Reflect a finite expansion back to the integer sum_j d_j base**(j-1)."""
    n = 0
    for d in reversed(x.digits):
        n = n * x.base + d
    return n


def default_depth(p: int) -> int:
    """Smallest m with p**m >= 2**53, capturing a double's full mantissa."""
    m, q = 1, p
    while q < 2**53:
        q *= p
        m += 1
    return m


def float_to_digits(x, p: int, depth: int | None = None) -> DigitVector:
    """Truncating base-p expansion of a real x in [0, 1): d_j = floor(x*p**j) mod p.

    x may be a float (converted exactly, no decimal reinterpretation) or a
    Fraction/int.  Truncation is toward zero, never rounded, so the result is
    deterministic in the input bits.
    """
    _require_prime(p)
    if depth is None:
        depth = default_depth(p)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    try:
        q = Fraction(x)
    except (ValueError, OverflowError) as exc:  # nan / inf floats
        raise OutOfUnitInterval(x) from exc
    if not 0 <= q < 1:
        raise OutOfUnitInterval(x)
    digits = []
    num, den = q.numerator, q.denominator
    for _ in range(depth):
        num *= p
        d, num = divmod(num, den)
        digits.append(d)
    return DigitVector(p, tuple(digits))


def _reversal_and_length(k: int, p: int) -> tuple[int, int]:
    """Digit-reverse a positive integer in base p; also report its digit count."""
    rev, length = 0, 0
    while k:
        k, r = divmod(k, p)
        rev = rev * p + r
        length += 1
    return rev, length


def padic_phase(k: int, x: DigitVector, p: int | None = None) -> PhaseRational:
    """Exact phase of the k-th p-adic character at x.

    With k's base-p digits filling a + 1 positions, the phase is
    (rev_p(k) * monna_inverse(x)) mod p**(a+1) over p**(a+1): the product of
    the reflected index and the reflected coordinate, reduced mod 1.  Only
    the first a + 1 digits of x can influence the result.
    """
    if p is None:
        p = x.base
    else:
        _require_prime(p)
    if x.base != p:
        raise BaseMismatch(f"digit vector is base {x.base}, expected {p}")
    if k < 0:
        raise ValueError("character index must be nonnegative")
    if k == 0:
        return PhaseRational(0, 1)
    rev, length = _reversal_and_length(k, p)
    modulus = p**length
    return PhaseRational((rev * monna_inverse(x)) % modulus, modulus)


def walsh_phase(k: int, x: DigitVector, p: int | None = None) -> PhaseRational:
    """Exact phase of the k-th base-p Walsh function at x.

    With k's base-p digits kappa_0, ..., kappa_a the phase is
    (sum_r kappa_r * x_{r+1} mod p) / p.
    """
    if p is None:
        p = x.base
    else:
        _require_prime(p)
    if x.base != p:
        raise BaseMismatch(f"digit vector is base {x.base}, expected {p}")
    if k < 0:
        raise ValueError("character index must be nonnegative")
    total = 0
    r = 0
    while k:
        k, kr = divmod(k, p)
        total += kr * x.digit(r + 1)
        r += 1
    return PhaseRational(total % p, p)


def phase_to_complex(q: Fraction | float) -> complex:
    """e^(2*pi*i*q); the single place where phases become floating point."""
    return cmath.exp(2j * math.pi * float(q))


def _check_index_point(k: IndexVector, x: Point, bases: PrimeBases) -> None:
    if not (k.dimension == x.dimension == bases.dimension):
        raise DimensionMismatch(
            f"index ({k.dimension}), point ({x.dimension}) and bases "
            f"({bases.dimension}) dimensions differ"
        )
    for coord, p in zip(x.coords, bases.primes):
        if coord.base != p:
            raise BaseMismatch(f"coordinate base {coord.base} does not match {p}")


def char_phase_total(
    k: IndexVector, x: Point, bases: PrimeBases, phase_fn=padic_phase
) -> Fraction:
    """Exact total phase of the s-dimensional character: coordinate phases mod 1."""
    _check_index_point(k, x, bases)
    total = Fraction(0)
    for ki, xi, p in zip(k.indices, x.coords, bases.primes):
        if ki:
            total += phase_fn(ki, xi, p).as_fraction()
    return total % 1


def char_product(
    k: IndexVector, x: Point, bases: PrimeBases, phase_fn=padic_phase
) -> complex:
    """Value of the s-dimensional character: the product of coordinate values."""
    return phase_to_complex(char_phase_total(k, x, bases, phase_fn))


def point_from_values(values, bases: PrimeBases, depth: int | None = None) -> Point:
    """Ingest real coordinates into an exact Point, one expansion per base."""
    vals = list(values)
    if len(vals) != bases.dimension:
        raise DimensionMismatch(
            f"{len(vals)} coordinates for {bases.dimension} bases"
        )
    return Point(
        tuple(float_to_digits(v, p, depth) for v, p in zip(vals, bases.primes))
    )
