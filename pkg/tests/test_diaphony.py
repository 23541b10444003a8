"""Diaphony engines: spot values, cross-checks between routes, bounds."""

import logging
import math
import random
from fractions import Fraction

import pytest

from padiaphony import (
    BoxTooLarge,
    DiaphonyReport,
    DigitVector,
    DimensionMismatch,
    DuplicateBase,
    IndexVector,
    Point,
    PrimeBases,
    TruncationBox,
    ZeroIndex,
    char_product,
    diaphony_kernel,
    diaphony_kernel_prefixes,
    diaphony_spectral,
    distance_to_nearest_integer,
    enclosure_grid,
    halton_diaphony_bound,
    halton_point,
    halton_stream,
    spectral_tail,
    truncated_spectral_sum,
    validate_bases,
    verify_weyl_bound,
    walsh_phase,
    weyl_sum,
    weyl_sum_bound,
    weyl_sum_table,
    worst_case_error,
)

B2 = validate_bases([2])
B3 = validate_bases([3])
B23 = validate_bases([2, 3])


def rand_points(rng, primes, count, max_len=5):
    pts = []
    for _ in range(count):
        coords = tuple(
            DigitVector(p, tuple(rng.randrange(p) for _ in range(rng.randrange(max_len + 1))))
            for p in primes
        )
        pts.append(Point(coords))
    return pts


# --- Weyl sums


def test_weyl_sum_of_trivial_character_counts_points():
    pts = list(halton_stream(7, B23))
    assert weyl_sum(pts, IndexVector((0, 0)), B23) == 7


def test_weyl_sum_examples():
    pts = list(halton_stream(2, B2))
    assert abs(weyl_sum(pts, IndexVector((1,)), B2)) < 1e-15
    origin = [halton_point(0, B23)]
    assert abs(weyl_sum(origin, IndexVector((1, 1)), B23) - 1) < 1e-15


def test_weyl_sum_dimension_mismatch():
    pts = list(halton_stream(2, B2))
    with pytest.raises(DimensionMismatch):
        weyl_sum(pts, IndexVector((1, 1)), B2)


def test_weyl_sum_table_matches_scalar_sums():
    rng = random.Random(20)
    pts = rand_points(rng, (2, 3), 9)
    box = TruncationBox((2, 2))
    for system, phase_fn in (("padic", None), ("walsh", walsh_phase)):
        table = weyl_sum_table(pts, B23, box, system=system)
        assert table.shape == (4, 9)
        for k1 in range(4):
            for k2 in range(9):
                k = IndexVector((k1, k2))
                if phase_fn is None:
                    expected = weyl_sum(pts, k, B23)
                else:
                    expected = sum(char_product(k, x, B23, phase_fn) for x in pts)
                assert abs(table[k1, k2] - expected) < 1e-12


def test_weyl_sum_table_one_dimension():
    pts = list(halton_stream(5, B3))
    table = weyl_sum_table(pts, B3, TruncationBox((2,)))
    assert table.shape == (9,)
    assert abs(table[0] - 5) < 1e-12
    for k in range(9):
        assert abs(table[k] - weyl_sum(pts, IndexVector((k,)), B3)) < 1e-12


def test_weyl_sum_table_three_dimensions():
    b235 = validate_bases([2, 3, 5])
    pts = list(halton_stream(11, b235))
    table = weyl_sum_table(pts, b235, TruncationBox((2, 1, 1)))
    assert table.shape == (4, 3, 5)
    rng = random.Random(21)
    for _ in range(25):
        idx = (rng.randrange(4), rng.randrange(3), rng.randrange(5))
        expected = weyl_sum(pts, IndexVector(idx), b235)
        assert abs(table[idx] - expected) < 1e-12


def test_box_cap_is_enforced():
    pts = list(halton_stream(2, B2))
    with pytest.raises(BoxTooLarge):
        weyl_sum_table(pts, B2, TruncationBox((23,)))
    with pytest.raises(BoxTooLarge):
        diaphony_spectral(pts, B2, TruncationBox((4,)), cap=8)


# --- kernel route


def test_single_point_has_unit_diaphony():
    for bases in (B2, B23, validate_bases([5, 7])):
        pt = halton_point(5, bases)
        for mode in ("fast", "exact"):
            rep = diaphony_kernel([pt], bases, mode)
            assert abs(rep.f - 1.0) < 1e-12
            assert rep.method == "kernel"


def test_two_point_halton_example():
    pts = list(halton_stream(2, B2))
    for mode in ("fast", "exact"):
        rep = diaphony_kernel(pts, B2, mode)
        assert abs(rep.f - 0.5) < 1e-12
        assert abs(rep.f_squared - 0.25) < 1e-12


def test_repeated_point_behaves_like_single_point():
    pt = halton_point(3, B23)
    rep = diaphony_kernel([pt, pt], B23)
    assert abs(rep.f - 1.0) < 1e-12


def test_fast_and_exact_agree_on_random_points():
    rng = random.Random(22)
    for _ in range(5):
        pts = rand_points(rng, (2, 3), rng.randrange(1, 12))
        fast = diaphony_kernel(pts, B23, "fast")
        exact = diaphony_kernel(pts, B23, "exact")
        assert abs(fast.f_squared - exact.f_squared) < 1e-12


def test_prefix_sweep_matches_direct_evaluation():
    pts = list(halton_stream(40, B23))
    sizes = [1, 2, 3, 5, 8, 13, 21, 34, 40]
    reports = diaphony_kernel_prefixes(pts, B23, sizes)
    for n, rep in zip(sizes, reports):
        direct = diaphony_kernel(pts[:n], B23, "fast")
        assert rep.n_points == n
        assert abs(rep.f_squared - direct.f_squared) < 1e-12


def test_prefix_sweep_validates_sizes():
    pts = list(halton_stream(4, B2))
    with pytest.raises(ValueError):
        diaphony_kernel_prefixes(pts, B2, [5])
    assert diaphony_kernel_prefixes(pts, B2, []) == []


def test_kernel_mode_validation():
    pts = list(halton_stream(2, B2))
    with pytest.raises(ValueError):
        diaphony_kernel(pts, B2, "approximate")
    with pytest.raises(ValueError):
        diaphony_kernel([], B2)


def test_no_meaningful_negative_excursion_on_uniform_grid(caplog):
    # N = 2**m one-dimensional prefixes are uniform grids with tiny diaphony;
    # rounding must not push the squared value below -1e-9 before clamping
    with caplog.at_level(logging.WARNING, logger="padiaphony.diaphony"):
        for n in (1024, 4096):
            pts = list(halton_stream(n, B2))
            rep = diaphony_kernel(pts, B2, "fast")
            assert 0.0 <= rep.f_squared <= 1.0
    assert not caplog.records


def test_diaphony_is_deterministic():
    pts = list(halton_stream(257, B23))
    a = diaphony_kernel(pts, B23, "fast")
    b = diaphony_kernel(pts, B23, "fast")
    assert a == b


# --- spectral route


def test_spectral_examples():
    pts = list(halton_stream(2, B2))
    rep = diaphony_spectral(pts, B2, TruncationBox((1,)))
    lower, upper = rep.enclosure
    assert abs(lower) < 1e-12
    assert abs(upper - 0.5) < 1e-12

    rep = diaphony_spectral(pts, B2, TruncationBox((3,)))
    lower, upper = rep.enclosure
    assert abs(lower - 0.1875) < 1e-12
    assert abs(upper - 0.3125) < 1e-12

    origin = [halton_point(0, B2)]
    rep = diaphony_spectral(origin, B2, TruncationBox((2,)))
    lower, upper = rep.enclosure
    assert abs(lower - 0.75) < 1e-12
    assert abs(upper - 1.0) < 1e-12


def test_spectral_report_invariants():
    pts = list(halton_stream(9, B23))
    box = TruncationBox((3, 2))
    rep = diaphony_spectral(pts, B23, box)
    lower, upper = rep.enclosure
    assert rep.method == "spectral"
    assert rep.box == box
    assert lower <= rep.f_squared <= upper
    assert abs(rep.f - math.sqrt(rep.f_squared)) < 1e-15
    assert abs((upper - lower) - float(spectral_tail(B23, box))) < 1e-12


def test_spectral_encloses_kernel_value():
    rng = random.Random(23)
    for bases, primes in ((B2, (2,)), (B23, (2, 3))):
        for _ in range(4):
            pts = rand_points(rng, primes, rng.randrange(1, 10))
            truth = diaphony_kernel(pts, bases, "exact").f_squared
            for g in range(1, 6):
                box = TruncationBox((g,) * len(primes))
                lower, upper = diaphony_spectral(pts, bases, box).enclosure
                assert lower <= truth + 1e-10
                assert truth <= upper + 1e-10


def test_enclosure_grid_matches_individual_calls():
    pts = list(halton_stream(17, B23))
    grid = enclosure_grid(pts, B23, TruncationBox((4, 3)))
    assert set(grid) == {(a, b) for a in range(1, 5) for b in range(1, 4)}
    for exps, (lower, upper) in grid.items():
        rep = diaphony_spectral(pts, B23, TruncationBox(exps))
        assert abs(lower - rep.enclosure[0]) < 1e-10
        assert abs(upper - rep.enclosure[1]) < 1e-10


def test_truncated_spectral_sum_systems_agree_at_equal_bases():
    rng = random.Random(24)
    b22 = PrimeBases((2, 2))
    pts = rand_points(rng, (2, 2), 12)
    box = TruncationBox((3, 2))
    a = truncated_spectral_sum(pts, b22, box, system="padic")
    w = truncated_spectral_sum(pts, b22, box, system="walsh")
    assert abs(a - w) < 1e-10


def test_truncated_spectral_sum_rejects_unknown_system():
    pts = list(halton_stream(2, B2))
    with pytest.raises(ValueError):
        truncated_spectral_sum(pts, B2, TruncationBox((1,)), system="fourier")


# --- identities and bounds


def test_worst_case_error_examples():
    zero = DiaphonyReport(1, 0.0, 0.0, "kernel")
    assert worst_case_error(zero, B2) == 0.0
    unit = DiaphonyReport(1, 1.0, 1.0, "kernel")
    assert abs(worst_case_error(unit, B2) - math.sqrt(2)) < 1e-15
    half = DiaphonyReport(2, 0.5, 0.25, "kernel")
    assert abs(worst_case_error(half, B23) - math.sqrt(11) / 2) < 1e-15


def test_halton_bound_constants():
    rep = halton_diaphony_bound(B2, 1)
    assert rep.d == 4.0
    assert rep.bound_f_squared == 4.0  # ln 1 = 0 leaves only d / N**2
    expected_c = (math.pi**2 / 3) * (1 + 8 / math.log(2)) / 2
    assert abs(rep.c - expected_c) < 1e-12
    assert abs(rep.c - 20.63) < 0.01

    assert halton_diaphony_bound(B23, 1).d == 12.0
    rep1024 = halton_diaphony_bound(B2, 1024)
    expected = (rep1024.c * math.log(1024) + 4.0) / 1024**2
    assert abs(rep1024.bound_f_squared - expected) < 1e-18


def test_halton_bound_requires_distinct_bases():
    with pytest.raises(DuplicateBase):
        halton_diaphony_bound(PrimeBases((2, 2)), 4)
    with pytest.raises(ValueError):
        halton_diaphony_bound(B2, 0)


def test_weyl_sum_bound_examples():
    assert weyl_sum_bound(IndexVector((1,)), B2) == 2
    assert weyl_sum_bound(IndexVector((1, 1)), B23) == 6
    with pytest.raises(ZeroIndex):
        weyl_sum_bound(IndexVector((0, 0)), B23)
    with pytest.raises(DuplicateBase):
        weyl_sum_bound(IndexVector((1, 1)), PrimeBases((2, 2)))
    with pytest.raises(DimensionMismatch):
        weyl_sum_bound(IndexVector((1,)), B23)


def test_distance_to_nearest_integer():
    assert distance_to_nearest_integer(Fraction(5, 6)) == Fraction(1, 6)
    assert distance_to_nearest_integer(Fraction(1, 4)) == Fraction(1, 4)
    assert distance_to_nearest_integer(Fraction(7, 2)) == Fraction(1, 2)
    assert distance_to_nearest_integer(Fraction(3)) == 0


def test_weyl_sums_obey_their_ceiling():
    rng = random.Random(25)
    pts = list(halton_stream(100, B23))
    for _ in range(50):
        k = IndexVector((rng.randrange(16), rng.randrange(27)))
        if k.is_zero:
            continue
        n = rng.randrange(1, 101)
        s = abs(weyl_sum(pts[:n], k, B23))
        assert s <= float(weyl_sum_bound(k, B23)) + 1e-9


def test_verify_weyl_bound_examples():
    rep = verify_weyl_bound(2, B2, TruncationBox((1,)))
    assert rep.violations == 0
    assert rep.worst_ratio < 1e-12

    rep = verify_weyl_bound(1, B2, TruncationBox((3,)))
    assert rep.violations == 0
    assert abs(rep.worst_ratio - 0.5) < 1e-12

    rep = verify_weyl_bound(16, B23, TruncationBox((2, 2)))
    assert rep.violations == 0
    assert rep.worst_index.dimension == 2


def test_verify_weyl_bound_requires_distinct_bases():
    with pytest.raises(DuplicateBase):
        verify_weyl_bound(4, PrimeBases((3, 3)), TruncationBox((2, 2)))
