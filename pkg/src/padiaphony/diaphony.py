"""Diaphony of point sets in the unit cube, by two independent routes.

The kernel route accumulates the closed-form pair kernel over all point
pairs (exactly in rationals, or fast in compensated doubles).  The spectral
route sums weighted squared Weyl sums over a finite index box and carries
the exact analytic tail, yielding a rigorous enclosure of the squared
diaphony.  On top sit the worst-case-error identity, the asymptotic bound
for Halton prefixes, and the per-index Weyl-sum ceiling check.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BoxTooLarge, DimensionMismatch, BaseMismatch, ZeroIndex
from .halton import halton_stream
from .kernel import kernel_value
from .padic import (
    IndexVector,
    Point,
    PrimeBases,
    char_product,
    monna,
    monna_inverse,
)
from .weights import TruncationBox, truncated_weight_mass, weight_mass

__all__ = [
    "ENUMERATION_CAP",
    "RATIO_TOLERANCE",
    "DiaphonyReport",
    "BoundReport",
    "WeylCheckReport",
    "KahanSum",
    "weyl_sum",
    "weyl_sum_table",
    "diaphony_kernel",
    "diaphony_kernel_prefixes",
    "truncated_spectral_sum",
    "spectral_tail",
    "diaphony_spectral",
    "enclosure_grid",
    "worst_case_error",
    "halton_diaphony_bound",
    "distance_to_nearest_integer",
    "weyl_sum_bound",
    "verify_weyl_bound",
]

log = logging.getLogger(__name__)

# Boxes enumerating more index vectors than this are rejected.
ENUMERATION_CAP = 1 << 22
# Absolute ceiling regardless of a caller-raised cap: keeps the vectorized
# modular arithmetic inside int64 (products stay below 2**62).
_HARD_BOX_LIMIT = 1 << 31
# Target entries per per-dimension phase-matrix chunk.
_TABLE_CHUNK = 1 << 22
# Row-block size of the pairwise kernel accumulation.
_PAIR_BLOCK = 1024
# Weyl-sum ratios above 1 + RATIO_TOLERANCE count as violations.
RATIO_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DiaphonyReport:
    """Result of one diaphony computation.

    ``enclosure`` and ``box`` are populated by the spectral method only;
    there ``lower <= f_squared <= upper`` is guaranteed.
    """

    n_points: int
    f: float
    f_squared: float
    method: str
    enclosure: tuple[float, float] | None = None
    box: TruncationBox | None = None


@dataclass(frozen=True)
class BoundReport:
    """Constants and value of the asymptotic ceiling on the squared diaphony."""

    c: float
    d: float
    bound_f_squared: float


@dataclass(frozen=True)
class WeylCheckReport:
    """Worst observed |Weyl sum| / ceiling ratio over an index box."""

    box: TruncationBox
    worst_ratio: float
    worst_index: IndexVector
    violations: int


class KahanSum:
    """Compensated running sum; works for float and complex alike."""

    def __init__(self, zero=0.0):
        self.total = zero
        self._carry = zero

    def add(self, value) -> None:
        y = value - self._carry
        t = self.total + y
        self._carry = (t - self.total) - y
        self.total = t


def _point_list(points, bases: PrimeBases) -> list[Point]:
    pts = list(points)
    for pt in pts:
        if pt.dimension != bases.dimension:
            raise DimensionMismatch(
                f"point dimension {pt.dimension} != bases dimension {bases.dimension}"
            )
        for c, p in zip(pt.coords, bases.primes):
            if c.base != p:
                raise BaseMismatch(f"coordinate base {c.base} does not match {p}")
    return pts


def _check_box(box: TruncationBox, bases: PrimeBases) -> None:
    if box.dimension != bases.dimension:
        raise DimensionMismatch(
            f"box dimension {box.dimension} != bases dimension {bases.dimension}"
        )


def _clamp_unit(raw: float) -> float:
    clamped = min(1.0, max(0.0, raw))
    if clamped != raw:
        excursion = raw - clamped
        if abs(excursion) > RATIO_TOLERANCE:
            log.warning("squared diaphony clamped to [0, 1] by %.3g", excursion)
        else:
            log.debug("squared diaphony clamped to [0, 1] by %.3g", excursion)
    return clamped


# ---------------------------------------------------------------------------
# Weyl sums


def weyl_sum(points, k: IndexVector, bases: PrimeBases) -> complex:
    """sum_n of the k-th character at x_n, compensated, from exact phases."""
    pts = _point_list(points, bases)
    if not pts:
        raise ValueError("at least one point is required")
    acc = KahanSum(0j)
    for x in pts:
        acc.add(char_product(k, x, bases))
    return acc.total


@lru_cache(maxsize=64)
def _index_tables(p: int, g: int):
    """Digit reversals, moduli p**len(k) and digit counts for all k < p**g."""
    size = p**g
    ks = np.arange(size, dtype=np.int64)
    digs = np.empty((g, size), dtype=np.int64)
    q = ks
    for j in range(g):
        q, digs[j] = np.divmod(q, p)
    lengths = np.zeros(size, dtype=np.int64)
    for j in range(g):
        lengths[digs[j] != 0] = j + 1
    pow_desc = p ** np.arange(g - 1, -1, -1, dtype=np.int64)
    full_rev = (digs * pow_desc[:, None]).sum(axis=0)
    mods = np.power(p, lengths)
    revs = full_rev // np.power(p, g - lengths)
    for arr in (revs, mods, lengths):
        arr.setflags(write=False)
    return revs, mods, lengths


@lru_cache(maxsize=64)
def _weight_vector(p: int, g: int) -> np.ndarray:
    """Float weights for all k < p**g: 1 at 0, p**-2t on each digit block."""
    w = np.ones(p**g)
    for t in range(g):
        w[p**t : p ** (t + 1)] = 1.0 / p ** (2 * t)
    w.setflags(write=False)
    return w


def _padic_phase_rows(xmod: np.ndarray, p: int, g: int) -> np.ndarray:
    """Character values for all k < p**g at coordinates given mod p**g."""
    revs, mods, _ = _index_tables(p, g)
    num = (revs[:, None] * xmod[None, :]) % mods[:, None]
    return np.exp((2j * np.pi) * (num / mods[:, None]))


def _walsh_phase_rows(xdigits: np.ndarray, p: int, g: int) -> np.ndarray:
    """Walsh values for all k < p**g at coordinates given as (n, g) digit rows."""
    size = p**g
    kdigs = np.empty((size, g), dtype=np.int64)
    q = np.arange(size, dtype=np.int64)
    for j in range(g):
        q, kdigs[:, j] = np.divmod(q, p)
    tot = (kdigs @ xdigits.T) % p
    return np.exp((2j * np.pi) * (tot / p))


def _accumulate_table(S: np.ndarray, mats: list[np.ndarray]) -> None:
    s = len(mats)
    if s == 1:
        S += mats[0].sum(axis=1)
    elif s == 2:
        S += mats[0] @ mats[1].T
    else:
        A, B = mats[-2], mats[-1]
        for idx in np.ndindex(*S.shape[:-2]):
            w = mats[0][idx[0]]
            for i in range(1, s - 2):
                w = w * mats[i][idx[i]]
            S[idx] += (A * w[None, :]) @ B.T


def weyl_sum_table(
    points,
    bases: PrimeBases,
    box: TruncationBox,
    system: str = "padic",
    cap: int = ENUMERATION_CAP,
) -> np.ndarray:
    """All Weyl sums over the box, as a complex tensor indexed by k.

    The tensor has shape ``(p_1**g_1, ..., p_s**g_s)`` and entry ``k`` equal
    to ``sum_n w_k(x_n)`` for the chosen function system ("padic" or
    "walsh"); the origin entry is the point count.  Per-dimension phase
    tables make each sum cost O(N) complex operations.
    """
    pts = _point_list(points, bases)
    if not pts:
        raise ValueError("at least one point is required")
    _check_box(box, bases)
    if system not in ("padic", "walsh"):
        raise ValueError(f"unknown function system {system!r}")
    sizes = [p**g for p, g in zip(bases.primes, box.exponents)]
    total = math.prod(sizes)
    effective_cap = min(cap, _HARD_BOX_LIMIT)
    if total > effective_cap:
        raise BoxTooLarge(total, effective_cap)

    n = len(pts)
    if system == "padic":
        coord_data = [
            np.array(
                [monna_inverse(pt.coords[i]) % sizes[i] for pt in pts],
                dtype=np.int64,
            )
            for i in range(bases.dimension)
        ]
    else:
        coord_data = [
            np.array(
                [[pt.coords[i].digit(j + 1) for j in range(g)] for pt in pts],
                dtype=np.int64,
            )
            for i, g in enumerate(box.exponents)
        ]

    S = np.zeros(sizes if len(sizes) > 1 else sizes[0], dtype=complex)
    n_chunk = max(1, _TABLE_CHUNK // max(sizes))
    for n0 in range(0, n, n_chunk):
        n1 = min(n0 + n_chunk, n)
        if system == "padic":
            mats = [
                _padic_phase_rows(coord_data[i][n0:n1], p, g)
                for i, (p, g) in enumerate(zip(bases.primes, box.exponents))
            ]
        else:
            mats = [
                _walsh_phase_rows(coord_data[i][n0:n1], p, g)
                for i, (p, g) in enumerate(zip(bases.primes, box.exponents))
            ]
        _accumulate_table(S, mats)
    return S


# ---------------------------------------------------------------------------
# Kernel route


def _digit_matrices(pts: list[Point], bases: PrimeBases) -> list[np.ndarray]:
    """Per dimension, an (N, D_i) digit matrix padded with zeros."""
    mats = []
    for i in range(bases.dimension):
        coords = [pt.coords[i] for pt in pts]
        depth = max((len(c.digits) for c in coords), default=0)
        A = np.zeros((len(pts), depth), dtype=np.int16)
        for row, c in enumerate(coords):
            if c.digits:
                A[row, : len(c.digits)] = c.digits
        mats.append(A)
    return mats


def _coordinate_kernel_block(rows: np.ndarray, cols: np.ndarray, p: int) -> np.ndarray:
    """Pairwise one-dimensional kernel values 1 + c(x, y) for one coordinate.

    Uses 1 + c = (p + 1)(1 - p**-v) with v the count of leading agreeing
    digits (v = infinity on exact equality), unrolled over digit levels.
    """
    depth = rows.shape[1]
    eq = np.ones((rows.shape[0], cols.shape[0]), dtype=bool)
    K = np.zeros(eq.shape)
    for a in range(1, depth + 1):
        eq &= rows[:, a - 1, None] == cols[None, :, a - 1]
        K += ((p * p - 1) / p**a) * eq
    K += ((p + 1) / p**depth) * eq
    return K


def _pair_kernel_block(dmats, primes, r0, r1, c0, c1) -> np.ndarray:
    K = None
    for A, p in zip(dmats, primes):
        Ki = _coordinate_kernel_block(A[r0:r1], A[c0:c1], p)
        K = Ki if K is None else K * Ki
    return K


def _lower_pair_row_sums(pts: list[Point], bases: PrimeBases) -> np.ndarray:
    """c[n] = sum_{m<n} K(x_n, x_m), accumulated blockwise in a fixed order."""
    dmats = _digit_matrices(pts, bases)
    primes = bases.primes
    n = len(pts)
    c = np.zeros(n)
    for b0 in range(0, n, _PAIR_BLOCK):
        b1 = min(b0 + _PAIR_BLOCK, n)
        if b0:
            cross = _pair_kernel_block(dmats, primes, b0, b1, 0, b0)
            c[b0:b1] += cross.sum(axis=1)
        intra = _pair_kernel_block(dmats, primes, b0, b1, b0, b1)
        c[b0:b1] += np.tril(intra, -1).sum(axis=1)
    return c


def diaphony_kernel_prefixes(points, bases: PrimeBases, prefix_sizes) -> list[DiaphonyReport]:
    """Fast-mode kernel reports for several prefix lengths in one quadratic pass.

    Every report equals ``diaphony_kernel`` on the corresponding prefix; the
    pairwise work is shared, so a whole convergence sweep costs one O(N**2)
    accumulation instead of one per row.
    """
    pts = _point_list(points, bases)
    sizes = list(prefix_sizes)
    if not sizes:
        return []
    for nn in sizes:
        if not 1 <= nn <= len(pts):
            raise ValueError(f"prefix size {nn} outside 1..{len(pts)}")
    need = max(sizes)
    row_sums = _lower_pair_row_sums(pts[:need], bases)
    sig = weight_mass(bases)
    wanted = set(sizes)
    acc = KahanSum()
    f_squared_at = {}
    for nn in range(1, need + 1):
        acc.add(float(row_sums[nn - 1]))
        if nn in wanted:
            raw = ((nn * sig + 2.0 * acc.total) / (nn * nn) - 1.0) / (sig - 1)
            f_squared_at[nn] = _clamp_unit(raw)
    return [
        DiaphonyReport(nn, math.sqrt(f_squared_at[nn]), f_squared_at[nn], "kernel")
        for nn in sizes
    ]


def diaphony_kernel(points, bases: PrimeBases, mode: str = "fast") -> DiaphonyReport:
    """Diaphony via the closed-form pair kernel.

    fast  -- double precision with compensated summation, using symmetry
             (pair sum = N * sigma + 2 * sum over unordered pairs).
    exact -- the full double sum accumulated in exact rationals and
             converted to float once at the end; the oracle path.
    """
    pts = _point_list(points, bases)
    if not pts:
        raise ValueError("at least one point is required")
    if mode == "fast":
        return diaphony_kernel_prefixes(pts, bases, [len(pts)])[0]
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    n = len(pts)
    total = Fraction(0)
    for x in pts:
        for y in pts:
            total += kernel_value(x, y, bases)
    sig = weight_mass(bases)
    exact = (total / (n * n) - 1) / (sig - 1)
    f_squared = _clamp_unit(float(exact))
    return DiaphonyReport(n, math.sqrt(f_squared), f_squared, "kernel")


# ---------------------------------------------------------------------------
# Spectral route


def _weighted_square_tensor(S: np.ndarray, bases: PrimeBases, box: TruncationBox) -> np.ndarray:
    """|S(k)|**2 scaled by the index weights, with the origin zeroed out."""
    M = np.abs(S) ** 2
    s = bases.dimension
    for i, (p, g) in enumerate(zip(bases.primes, box.exponents)):
        shape = [1] * s
        shape[i] = -1
        M *= _weight_vector(p, g).reshape(shape)
    M[(0,) * s] = 0.0
    return M


def truncated_spectral_sum(
    points,
    bases: PrimeBases,
    box: TruncationBox,
    system: str = "padic",
    cap: int = ENUMERATION_CAP,
) -> float:
    """The boxed part of the squared diaphony:
    (1/(sigma - 1)) * sum over nonzero boxed k of weight(k) * |S(k)/N|**2."""
    pts = _point_list(points, bases)
    S = weyl_sum_table(pts, bases, box, system=system, cap=cap)
    M = _weighted_square_tensor(S, bases, box)
    n = len(pts)
    return float(M.sum()) / (n * n) / (weight_mass(bases) - 1)


def spectral_tail(bases: PrimeBases, box: TruncationBox) -> Fraction:
    """Exact weight mass outside the box, normalized: (sigma - sigma(g)) / (sigma - 1)."""
    sig = weight_mass(bases)
    return (sig - truncated_weight_mass(bases, box)) / (sig - 1)


def diaphony_spectral(
    points,
    bases: PrimeBases,
    box: TruncationBox,
    cap: int = ENUMERATION_CAP,
) -> DiaphonyReport:
    """Diaphony via truncated spectral sums, with a rigorous enclosure.

    ``lower`` is the boxed sum; ``upper`` adds the exact analytic tail, and
    the true squared diaphony always lies between them.  The reported point
    value is the midpoint of the enclosure.
    """
    pts = _point_list(points, bases)
    lower = truncated_spectral_sum(pts, bases, box, system="padic", cap=cap)
    tail = spectral_tail(bases, box)
    upper = lower + float(tail)
    f_squared = _clamp_unit(lower + float(tail) / 2)
    return DiaphonyReport(
        len(pts),
        math.sqrt(f_squared),
        f_squared,
        "spectral",
        enclosure=(lower, upper),
        box=box,
    )


def enclosure_grid(
    points,
    bases: PrimeBases,
    box: TruncationBox,
    cap: int = ENUMERATION_CAP,
) -> dict[tuple[int, ...], tuple[float, float]]:
    """Enclosures for every sub-box g' <= box, from a single Weyl-sum table.

    Weyl sums and index weights do not depend on the box, so the enclosure
    for each smaller box is a partial sum of one weighted tensor; this makes
    whole truncation sweeps cost barely more than their largest member.
    """
    pts = _point_list(points, bases)
    S = weyl_sum_table(pts, bases, box, cap=cap)
    M = _weighted_square_tensor(S, bases, box)
    n = len(pts)
    sig = weight_mass(bases)
    out = {}
    for exps in itertools.product(*(range(1, g + 1) for g in box.exponents)):
        slices = tuple(slice(0, p**g) for p, g in zip(bases.primes, exps))
        lower = float(M[slices].sum()) / (n * n) / (sig - 1)
        tail = spectral_tail(bases, TruncationBox(exps))
        out[exps] = (lower, lower + float(tail))
    return out


# ---------------------------------------------------------------------------
# Identities and sequence bounds


def worst_case_error(report: DiaphonyReport, bases: PrimeBases) -> float:
    """Worst-case equal-weight integration error: sqrt(sigma - 1) * F."""
    return math.sqrt(weight_mass(bases) - 1) * report.f


def halton_diaphony_bound(bases: PrimeBases, n_points: int) -> BoundReport:
    """Ceiling on the squared diaphony of an N-point Halton prefix.

    bound = c * (ln N)**s / N**2 + d / N**2 with
    c = (1/(sigma - 1)) * (pi**2/3) * prod_j (1 + 2 p_j**2 / ln p_j) and
    d = 2 s max_i p_i.  Natural logarithms throughout.
    """
    bases.require_distinct()
    if n_points < 1:
        raise ValueError("n_points must be at least 1")
    sig = weight_mass(bases)
    s = bases.dimension
    prod = 1.0
    for p in bases.primes:
        prod *= 1.0 + 2.0 * p * p / math.log(p)
    c = (math.pi**2 / 3.0) * prod / (sig - 1)
    d = float(2 * s * max(bases.primes))
    bound = (c * math.log(n_points) ** s + d) / n_points**2
    return BoundReport(c, d, bound)


def distance_to_nearest_integer(q: Fraction) -> Fraction:
    """min(frac(q), 1 - frac(q)), exactly."""
    frac = q % 1
    return min(frac, 1 - frac)


def weyl_sum_bound(k: IndexVector, bases: PrimeBases) -> Fraction:
    """Exact ceiling 1 / ||sum_j phi_{p_j}(k_j)|| on |weyl_sum| over any
    Halton prefix in pairwise-distinct prime bases."""
    bases.require_distinct()
    if k.dimension != bases.dimension:
        raise DimensionMismatch(
            f"index dimension {k.dimension} != bases dimension {bases.dimension}"
        )
    if k.is_zero:
        raise ZeroIndex()
    total = Fraction(0)
    for ki, p in zip(k.indices, bases.primes):
        if ki:
            total += monna(ki, p).value()
    # distinct primes force a non-integral total, so the distance is positive
    return 1 / distance_to_nearest_integer(total)


def verify_weyl_bound(
    n_points: int,
    bases: PrimeBases,
    box: TruncationBox,
    cap: int = ENUMERATION_CAP,
) -> WeylCheckReport:
    """Check |weyl_sum(k)| <= its ceiling for every nonzero k in the box.

    The Halton prefix is generated internally.  Each index records the ratio
    |S(k)| * ||sum_j phi(k_j)||; ratios above 1 + RATIO_TOLERANCE count as
    violations.
    """
    bases.require_distinct()
    _check_box(box, bases)
    if n_points < 1:
        raise ValueError("n_points must be at least 1")
    pts = list(halton_stream(n_points, bases))
    S = weyl_sum_table(pts, bases, box, cap=cap)
    abs_s = np.abs(S)
    phi = [
        [monna(k, p).value() for k in range(p**g)]
        for p, g in zip(bases.primes, box.exponents)
    ]
    worst_ratio = -1.0
    worst_index = None
    violations = 0
    for idx in np.ndindex(*abs_s.shape):
        if not any(idx):
            continue
        total = Fraction(0)
        for i, ki in enumerate(idx):
            if ki:
                total += phi[i][ki]
        ratio = float(abs_s[idx]) * float(distance_to_nearest_integer(total))
        if ratio > worst_ratio:
            worst_ratio = ratio
            worst_index = idx
        if ratio > 1.0 + RATIO_TOLERANCE:
            violations += 1
    return WeylCheckReport(
        box, worst_ratio, IndexVector(tuple(int(i) for i in worst_index)), violations
    )
