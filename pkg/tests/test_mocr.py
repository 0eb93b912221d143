from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.cone_algebra import scale_vector
from core.generators import gen_random
from core.mocr import (
    BudgetExceededError,
    check_ratio,
    full_analysis,
    guaranteed_ratios,
    mo_cr,
    mo_cr_bruteforce,
)
from core.pareto import dominates, weak_dominates, worst_subset
from models.game import MOGame, ObjectiveSpace
from models.outcome import OutcomeError, OutcomeSet, PositivityError
from strategies import set_pairs, vec

COASTAL_RATIOS = {vec("15/23", "38/61"), vec("40/69", "53/61"), vec("10/23", "38/31")}


def test_coastal_ratios(coastal_worst, coastal_frontier):
    result = mo_cr(coastal_worst, coastal_frontier)
    assert set(result) == COASTAL_RATIOS
    assert (result.q, result.m, result.size_bound) == (2, 2, 4)


def test_coastal_witnesses(coastal_worst, coastal_frontier):
    result = mo_cr(coastal_worst, coastal_frontier)
    y1, y2 = vec(30, 53), vec(40, 38)
    z1, z2 = vec(46, 61), vec(69, 31)
    assert result.witnesses[vec("15/23", "38/61")] == {y1: z1, y2: z1}
    assert result.witnesses[vec("40/69", "53/61")] == {y1: z1, y2: z2}
    assert result.witnesses[vec("10/23", "38/31")] == {y1: z2, y2: z2}


def test_check_ratio(coastal_worst, coastal_frontier):
    verdict = check_ratio(vec("15/23", "38/61"), coastal_worst, coastal_frontier)
    assert verdict and verdict.violation is None
    assert set(verdict.witnesses) == set(coastal_worst)

    failed = check_ratio(vec(1, 1), coastal_worst, coastal_frontier)
    assert not failed
    assert failed.violation == vec(30, 53)


def test_single_outcome_ratio():
    result = mo_cr([(72, 110)], [(96, 150)])
    assert result.ratios.vectors == (vec("3/4", "11/15"),)


def test_input_validation(coastal_worst):
    with pytest.raises(PositivityError):
        mo_cr(coastal_worst, [(46, 0)])
    with pytest.raises(OutcomeError):
        mo_cr(OutcomeSet(), [(1, 1)])
    with pytest.raises(OutcomeError):
        mo_cr(coastal_worst, [(1, 1, 1)])


def test_budget_guard(coastal_worst, coastal_frontier):
    with pytest.raises(BudgetExceededError):
        mo_cr_bruteforce(coastal_worst, coastal_frontier, budget=3)
    assert set(mo_cr_bruteforce(coastal_worst, coastal_frontier, budget=4)) == COASTAL_RATIOS


@given(set_pairs(max_d=3, max_size=4))
@settings(max_examples=120, deadline=None)
def test_layered_matches_bruteforce(pair):
    E, F = pair
    assert mo_cr(E, F).ratios == mo_cr_bruteforce(E, F).ratios


@given(set_pairs(max_d=3, max_size=4))
@settings(max_examples=80, deadline=None)
def test_layered_matches_cone_intersection(pair):
    E, F = pair
    assert set(mo_cr(E, F)) == set(guaranteed_ratios(E, F).summits)


@given(set_pairs(max_d=3, max_size=5))
@settings(max_examples=100, deadline=None)
def test_ratios_are_sound_and_maximal(pair):
    E, F = pair
    result = mo_cr(E, F)
    assert len(result) <= result.size_bound
    for rho in result:
        assert check_ratio(rho, E, F)
        for k in range(len(rho)):
            bumped = rho[:k] + (rho[k] + Fraction(1, 1000),) + rho[k + 1:]
            assert not check_ratio(bumped, E, F)
    assert not any(dominates(a, b) for a in result for b in result)


@given(set_pairs(max_d=3, max_size=5))
@settings(max_examples=80, deadline=None)
def test_witnesses_certify_each_ratio(pair):
    E, F = pair
    result = mo_cr(E, F)
    for rho, matches in result.witnesses.items():
        assert set(matches) == set(result.worst)
        for y, z in matches.items():
            assert z in result.efficient
            assert weak_dominates(y, scale_vector(rho, z))


@given(set_pairs(max_d=3, max_size=5))
@settings(max_examples=80, deadline=None)
def test_worst_outcomes_suffice(pair):
    E, F = pair
    assert mo_cr(E, F).ratios == mo_cr(worst_subset(E), F).ratios


@given(set_pairs(max_d=3, max_size=5), st.data())
@settings(max_examples=80, deadline=None)
def test_layer_order_does_not_change_ratios(pair, data):
    E, F = pair
    worst = worst_subset(E)
    order = data.draw(st.permutations(range(len(worst))))
    reordered = mo_cr(worst, F, order=order)
    assert reordered.ratios == mo_cr(worst, F).ratios
    for rho, matches in reordered.witnesses.items():
        assert set(matches) == set(worst)
        assert all(weak_dominates(y, scale_vector(rho, z)) for y, z in matches.items())


def test_reversed_layers_on_coastal_sets(coastal_worst, coastal_frontier):
    result = mo_cr(coastal_worst, coastal_frontier, order=[1, 0])
    assert set(result) == COASTAL_RATIOS
    with pytest.raises(OutcomeError):
        mo_cr(coastal_worst, coastal_frontier, order=[0, 0])


def test_threads_do_not_change_ratios():
    E = OutcomeSet.from_vectors([(3, 9, 4), (8, 2, 6), (5, 5, 5), (9, 1, 2)])
    F = OutcomeSet.from_vectors([(10, 10, 7), (12, 6, 9), (7, 12, 10)])
    assert mo_cr(E, F, threads=1).ratios == mo_cr(E, F, threads=4).ratios


def test_full_analysis_tobacco(tobacco2):
    report = full_analysis(tobacco2)
    assert report.status == "defined"
    assert report.mocr.ratios.vectors == (vec("3/4", "11/15"),)
    assert report.sizes["pareto_nash"] == 6
    assert report.sizes["q"] == 1 and report.sizes["m"] == 1
    assert set(report.timings) == {"outcomes", "equilibria", "mocr"}


def test_full_analysis_without_equilibrium(matching_pennies):
    report = full_analysis(matching_pennies)
    assert report.status == "undefined"
    assert report.mocr is None
    assert report.sizes["mocr"] == 0


def test_full_analysis_rejects_zero_efficient_outcome():
    game = MOGame(
        agents=["solo"],
        action_sets=[["only"]],
        space=ObjectiveSpace(names=("x", "y")),
        payoffs=[{(0,): vec(0, 1)}],
    )
    with pytest.raises(PositivityError, match="only"):
        full_analysis(game)


@pytest.mark.parametrize("seed", range(5))
def test_full_analysis_ratios_hold_for_all_equilibria(seed):
    game = gen_random(3, 2, 2, seed=seed, distribution="positive")
    report = full_analysis(game)
    if report.mocr is None:
        pytest.skip("no Pareto-Nash equilibrium for this seed")
    for rho in report.mocr:
        assert check_ratio(rho, report.equilibria, report.efficient)


@pytest.mark.parametrize("seed", range(8))
def test_single_objective_reduces_to_classical_ratio(seed):
    game = gen_random(3, 2, 1, seed=seed, distribution="positive")
    report = full_analysis(game)
    if report.mocr is None:
        pytest.skip("no pure equilibrium for this seed")
    expected = min(y[0] for y in report.equilibria) / max(a[0] for a in report.outcomes)
    assert report.mocr.ratios.vectors == ((expected,),)


def test_single_objective_sets():
    assert mo_cr([(3,), (5,)], [(10,)]).ratios.vectors == (vec("3/10"),)
