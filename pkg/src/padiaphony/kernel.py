"""Closed form of the reproducing kernel underlying the diaphony.

The one-dimensional kernel is 1 + c(x, y) where c depends only on the first
digit position where the expansions of x and y disagree; it is discontinuous
there, so everything is evaluated on exact digit vectors.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BaseMismatch, DimensionMismatch
from .padic import DigitVector, Point, PrimeBases

__all__ = ["centered_kernel_1d", "kernel_value"]


def centered_kernel_1d(x: DigitVector, y: DigitVector) -> Fraction:
    """The one-dimensional kernel minus its constant term, exactly.

    Returns p when x = y, and p - (p + 1) * p**(1 - i0) otherwise, where i0
    is the first position at which the expansions differ (positions past
    either expansion read as zero).  Canonical digit vectors make the x = y
    branch a structural comparison; no floating point is involved.
    """
    if x.base != y.base:
        raise BaseMismatch(f"bases {x.base} and {y.base} differ")
    p = x.base
    if x.digits == y.digits:
        return Fraction(p)
    depth = max(len(x.digits), len(y.digits))
    for j in range(1, depth + 1):
        if x.digit(j) != y.digit(j):
            return p - Fraction(p + 1, p ** (j - 1))
    raise AssertionError("distinct canonical digit vectors must differ somewhere")


def kernel_value(x: Point, y: Point, bases: PrimeBases) -> Fraction:
    """The s-dimensional kernel: exact product over coordinates of 1 + c."""
    if not (x.dimension == y.dimension == bases.dimension):
        raise DimensionMismatch(
            f"points ({x.dimension}, {y.dimension}) and bases "
            f"({bases.dimension}) dimensions differ"
        )
    out = Fraction(1)
    for xi, yi, p in zip(x.coords, y.coords, bases.primes):
        if xi.base != p or yi.base != p:
            raise BaseMismatch(f"coordinate bases do not match declared base {p}")
        out *= 1 + centered_kernel_1d(xi, yi)
    return out
