import pytest
from hypothesis import given, settings

from core.equilibria import best_response_actions, equilibrium_analysis, pareto_nash_profiles
from core.generators import gen_random
from core.pareto import dominates
from models.game import GameError
from strategies import small_games, vec


def deviation_equilibria(game):
    """Profiles where no agent has a strictly dominating unilateral deviation."""
    found = []
    for profile in game.profiles():
        stable = True
        for i in range(game.n):
            current = game.evaluate(i, profile)
            for b in range(game.action_counts[i]):
                deviation = profile[:i] + (b,) + profile[i + 1:]
                if dominates(game.evaluate(i, deviation), current):
                    stable = False
        if stable:
            found.append(profile)
    return found


def test_consumer_best_responses(tobacco1):
    # both choices are efficient when the industry is active
    assert best_response_actions(tobacco1, 1, (1,)) == [0, 1]
    assert best_response_actions(tobacco1, 1, (2,)) == [0, 1]


def test_industry_best_response_with_smokers(tobacco2):
    assert best_response_actions(tobacco2, 0, (1, 0)) == [2]
    assert best_response_actions(tobacco2, 0, (1, 1)) == [2]
    # without smokers the industry is indifferent
    assert best_response_actions(tobacco2, 0, (0, 0)) == [0, 1, 2]


def test_single_action_agent():
    game = gen_random(2, [1, 3], 2, seed=4)
    assert best_response_actions(game, 0, (2,)) == [0]


def test_best_response_validation(tobacco1):
    with pytest.raises(GameError):
        best_response_actions(tobacco1, 0, (0, 0))
    with pytest.raises(GameError):
        best_response_actions(tobacco1, 5, (0,))
    with pytest.raises(GameError):
        best_response_actions(tobacco1, 0, (7,))


def test_tobacco_pareto_nash(tobacco2):
    profiles = pareto_nash_profiles(tobacco2)
    advertising = [p for p in profiles if p[0] == 2]
    assert advertising == [(2, 0, 0), (2, 0, 1), (2, 1, 0), (2, 1, 1)]
    # with nobody smoking, not-active and active are equilibria too
    assert sorted(set(profiles) - set(advertising)) == [(0, 0, 0), (1, 0, 0)]
    assert len(profiles) == 2 ** 2 + 2


def test_tobacco_equilibrium_sets(tobacco1, tobacco2):
    eq1 = equilibrium_analysis(tobacco1)
    assert eq1.outcomes.vectors == (vec(36, 55), vec(48, 75))
    assert eq1.worst.vectors == (vec(36, 55),)

    eq2 = equilibrium_analysis(tobacco2)
    assert eq2.outcomes.vectors == (vec(72, 110), vec(84, 130), vec(96, 150))
    assert eq2.worst.vectors == (vec(72, 110),)
    assert eq2.worst.witnesses(vec(72, 110)) == ((2, 1, 1),)


def test_no_equilibrium(matching_pennies):
    eq = equilibrium_analysis(matching_pennies)
    assert eq.is_empty()
    assert eq.outcomes.is_empty() and eq.worst.is_empty()


def test_one_agent_game_keeps_efficient_actions():
    game = gen_random(1, 5, 2, seed=9)
    column = [game.evaluate(0, (a,)) for a in range(5)]
    expected = [(a,) for a, v in enumerate(column) if not any(dominates(w, v) for w in column)]
    assert pareto_nash_profiles(game) == expected


@pytest.mark.parametrize("seed", range(10))
def test_single_objective_matches_pure_nash(seed):
    game = gen_random(2, 2, 1, seed=seed)
    classical = [
        p for p in game.profiles()
        if all(
            game.evaluate(i, p)[0] >= game.evaluate(i, p[:i] + (b,) + p[i + 1:])[0]
            for i in range(2) for b in range(2)
        )
    ]
    assert pareto_nash_profiles(game) == classical


def test_single_objective_worst_is_minimum():
    game = gen_random(2, 2, 1, seed=2, max_payoff=9)
    eq = equilibrium_analysis(game)
    if not eq.is_empty():
        assert eq.worst.vectors == (min(eq.outcomes),)


@given(small_games())
@settings(max_examples=80, deadline=None)
def test_marking_matches_deviation_check(game):
    assert pareto_nash_profiles(game) == deviation_equilibria(game)


@given(small_games())
@settings(max_examples=40, deadline=None)
def test_reported_equilibria_have_no_dominating_deviation(game):
    for profile in pareto_nash_profiles(game):
        for i in range(game.n):
            for b in range(game.action_counts[i]):
                deviation = profile[:i] + (b,) + profile[i + 1:]
                assert not dominates(game.evaluate(i, deviation), game.evaluate(i, profile))


def test_threads_do_not_change_result():
    game = gen_random(4, 3, 2, seed=21)
    assert pareto_nash_profiles(game, threads=1) == pareto_nash_profiles(game, threads=4)
