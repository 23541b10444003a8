"""Exact generation of Halton points in pairwise-distinct prime bases."""

from __future__ import annotations

from typing import Iterator

from .errors import CountOverflow, DuplicateBase, EmptyBases, NonPrimeBase
from .padic import Point, PrimeBases, is_prime, monna

__all__ = ["MAX_INDEX", "validate_bases", "halton_point", "halton_stream"]

# Indices are confined to 64 bits; larger ranges are rejected, not wrapped.
MAX_INDEX = 2**63 - 1


def validate_bases(raw) -> PrimeBases:
    """Check a raw base list: nonempty, prime, pairwise distinct."""
    entries = list(raw)
    if not entries:
        raise EmptyBases()
    seen = set()
    for b in entries:
        if not isinstance(b, int) or isinstance(b, bool) or not is_prime(b):
            raise NonPrimeBase(b)
        if b in seen:
            raise DuplicateBase(b)
        seen.add(b)
    return PrimeBases(tuple(entries))


def halton_point(n: int, bases: PrimeBases) -> Point:
    """The n-th point: coordinate i is the base-p_i digit reversal of n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_INDEX:
        raise CountOverflow(f"index {n} exceeds the supported range")
    return Point(tuple(monna(n, p) for p in bases.primes))


def halton_stream(count: int, bases: PrimeBases, start: int = 0) -> Iterator[Point]:
    """Points start, ..., start + count - 1, generated in order."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if start < 0:
        raise ValueError("start must be nonnegative")
    if start + count - 1 > MAX_INDEX:
        raise CountOverflow(
            f"indices up to {start + count - 1} exceed the supported range"
        )

    def generate() -> Iterator[Point]:
        for n in range(start, start + count):
            yield halton_point(n, bases)

    return generate()
