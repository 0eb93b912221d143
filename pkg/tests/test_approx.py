from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.approx import (
    CoverDirection,
    CoverError,
    CoverSpec,
    approx_mocr,
    approximate_mocr,
    build_cover,
    grid_level,
    covered_within,
    lower_cover,
    upper_cover,
    verify_cover,
)
from core.mocr import check_ratio, mo_cr
from core.pareto import efficient_subset
from models.outcome import OutcomeError, PositivityError
from strategies import outcome_sets, set_pairs, vec

PRECISIONS = ("1/10", "1/3", "1/2", 1, 3, 15)


def test_cover_spec():
    spec = CoverSpec(epsilon="1/2", direction=CoverDirection.UPPER)
    assert spec.epsilon == Fraction(1, 2)
    assert spec.base == Fraction(3, 2)
    for bad in (0, "-1/3"):
        with pytest.raises(OutcomeError):
            CoverSpec(epsilon=bad, direction=CoverDirection.LOWER)


@pytest.mark.parametrize("eps, level", [
    ("1/10", 3),
    ("1/3", 2),
    ("4142/10000", 2),
    ("4143/10000", 1),
    ("1/2", 1),
    (1, 0),
    (3, -1),
    (15, -2),
    (63, -2),
    (255, -3),
])
def test_grid_level(eps, level):
    assert grid_level(eps) == level
    assert CoverSpec(epsilon=eps, direction=CoverDirection.LOWER).level == level


def test_coarser_precision_never_splits_a_cell():
    close_pair = [(Fraction(149, 100), 1), (Fraction(151, 100), 1)]
    assert [len(upper_cover(close_pair, eps)) for eps in ("1/10", "1/2")] == [1, 1]
    lower_pair = [(Fraction(149, 100), Fraction(101, 100)), (Fraction(151, 100), 1)]
    assert [len(lower_cover(lower_pair, eps)) for eps in ("1/10", "1/2")] == [1, 1]


def test_extreme_magnitudes():
    tiny, huge = Fraction(1, 10 ** 400), Fraction(10 ** 400)
    assert upper_cover([(tiny, 1)], "1/2").vectors == ((tiny, Fraction(1)),)
    assert upper_cover([(huge, 1)], "1/2").vectors == ((huge, Fraction(1)),)
    assert lower_cover([(tiny, huge)], "1/10").vectors == ((tiny, huge),)
    spread = [(huge, 1), (2 * huge, 1)]
    assert len(upper_cover(spread, "1/10")) == 2
    assert len(upper_cover(spread, 3)) == 1


def test_singleton_covers_are_the_set():
    assert lower_cover([(3, 5)], "1/2").vectors == (vec(3, 5),)
    assert upper_cover([(3, 5)], "1/2").vectors == (vec(3, 5),)


def test_fine_grid_keeps_every_point(coastal_worst, coastal_frontier):
    assert lower_cover(coastal_worst, 1) == coastal_worst
    assert upper_cover(coastal_frontier, 1) == coastal_frontier


def test_coarse_lower_cover_takes_cell_meet(coastal_worst):
    cover = lower_cover(coastal_worst, 63)
    assert cover.vectors == (vec(30, 38),)
    assert verify_cover(coastal_worst, cover, 63, CoverDirection.LOWER)


def test_coarse_upper_cover_keeps_smallest_member(coastal_frontier):
    cover = build_cover(coastal_frontier, CoverSpec(epsilon=99, direction=CoverDirection.UPPER))
    assert cover.vectors == (vec(46, 61),)


def test_verify_cover_identity_and_missing_extreme(coastal_frontier):
    for direction in CoverDirection:
        assert verify_cover(coastal_frontier, coastal_frontier, 0, direction)
    assert not verify_cover([(1, 10), (10, 1)], [(1, 10)], "1/10", CoverDirection.UPPER)
    assert not verify_cover([(1, 10), (10, 1)], [(1, 10)], "1/10", CoverDirection.LOWER)
    assert not verify_cover([(1, 1)], [(1, 1, 1)], 1, CoverDirection.LOWER)


def test_cover_input_errors():
    with pytest.raises(PositivityError):
        lower_cover([(0, 1)], 1)
    with pytest.raises(OutcomeError):
        upper_cover([], 1)
    with pytest.raises(OutcomeError):
        upper_cover([(1, 2)], 0)


def test_zero_precision_gives_exact_result(coastal_worst, coastal_frontier):
    result, certificate = approx_mocr(
        coastal_worst, coastal_frontier, 0, 0, exact_E=coastal_worst, exact_F=coastal_frontier
    )
    assert result.ratios == mo_cr(coastal_worst, coastal_frontier).ratios
    assert certificate.factor == 1
    assert certificate.verified


def test_unverified_certificate(coastal_worst, coastal_frontier):
    _, certificate = approx_mocr(coastal_worst, coastal_frontier, "1/10", "1/5")
    assert not certificate.verified
    assert certificate.factor == Fraction(11, 10) * Fraction(6, 5)


def test_bad_supplied_cover_is_rejected(coastal_worst, coastal_frontier):
    with pytest.raises(CoverError):
        approx_mocr([(1, 1)], coastal_frontier, "1/10", "1/10", exact_E=coastal_worst)
    with pytest.raises(CoverError):
        approx_mocr(coastal_worst, [(46, 61)], "1/10", "1/10", exact_F=coastal_frontier)
    with pytest.raises(OutcomeError):
        approx_mocr(coastal_worst, coastal_frontier, -1, 0)


@given(outcome_sets(d=2, max_size=10, positive=True))
@settings(max_examples=60, deadline=None)
def test_cover_sizes_shrink_as_precision_grows(S):
    lower = [len(lower_cover(S, eps)) for eps in PRECISIONS]
    upper = [len(upper_cover(S, eps)) for eps in PRECISIONS]
    assert lower == sorted(lower, reverse=True)
    assert upper == sorted(upper, reverse=True)


@given(outcome_sets(max_size=8, positive=True), st.sampled_from(["1/10", "1/2", "2"]))
@settings(max_examples=80, deadline=None)
def test_built_covers_verify(S, eps):
    assert verify_cover(S, lower_cover(S, eps), eps, CoverDirection.LOWER)
    assert verify_cover(S, upper_cover(S, eps), eps, CoverDirection.UPPER)
    assert all(z in S for z in upper_cover(S, eps))


@given(set_pairs(max_d=3, max_size=6, positive=True), st.sampled_from(["1/10", "1/2"]))
@settings(max_examples=60, deadline=None)
def test_approximate_ratios_are_sound_and_close(pair, eps):
    E, F = pair
    exact = mo_cr(E, efficient_subset(F))
    approximate, certificate = approximate_mocr(E, F, eps, eps)
    assert certificate.verified
    for rho in approximate:
        assert check_ratio(rho, E, efficient_subset(F))
    assert covered_within(exact, approximate, certificate.factor) == []


def test_covered_within_reports_missing_ratios(coastal_worst, coastal_frontier):
    exact = mo_cr(coastal_worst, coastal_frontier)
    coarse = mo_cr([(1, 1)], [(100, 100)])
    assert set(covered_within(exact, coarse, Fraction(1))) == set(exact)
