"""Hypothesis strategies for exact vectors, outcome sets and games."""

from fractions import Fraction

from hypothesis import strategies as st

from core.generators import gen_random
from models.outcome import OutcomeSet


def vec(*components):
    """Exact vector from ints or rational strings."""
    return tuple(Fraction(c) for c in components)


def rationals(min_numerator: int = 0, max_numerator: int = 40, max_denominator: int = 6):
    return st.builds(
        Fraction,
        st.integers(min_value=min_numerator, max_value=max_numerator),
        st.integers(min_value=1, max_value=max_denominator),
    )


def positive_rationals(max_numerator: int = 40, max_denominator: int = 6):
    return rationals(1, max_numerator, max_denominator)


def vectors(d: int, positive: bool = False):
    component = positive_rationals() if positive else rationals()
    return st.tuples(*[component] * d)


@st.composite
def outcome_sets(draw, d=None, min_size: int = 1, max_size: int = 6, positive: bool = False):
    if d is None:
        d = draw(st.integers(min_value=1, max_value=4))
    items = draw(st.lists(vectors(d, positive), min_size=min_size, max_size=max_size))
    return OutcomeSet.from_vectors(items)


@st.composite
def set_pairs(draw, min_d: int = 1, max_d: int = 4, max_size: int = 6, positive: bool = False):
    """Two outcome sets of one dimension; the second is always strictly positive."""
    d = draw(st.integers(min_value=min_d, max_value=max_d))
    first = draw(outcome_sets(d=d, max_size=max_size, positive=positive))
    second = draw(outcome_sets(d=d, max_size=max_size, positive=True))
    return first, second


@st.composite
def small_games(draw, max_agents: int = 3, max_actions: int = 3, max_objectives: int = 3):
    n = draw(st.integers(min_value=1, max_value=max_agents))
    alphas = draw(st.lists(st.integers(min_value=1, max_value=max_actions), min_size=n, max_size=n))
    d = draw(st.integers(min_value=1, max_value=max_objectives))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return gen_random(n, alphas, d, seed, max_payoff=draw(st.integers(min_value=1, max_value=6)))
