"""Game generators: seeded random games and the tobacco economy."""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Union

import numpy as np

try:
    from ..models.game import MOGame, ObjectiveSpace
    from ..models.outcome import ActionProfile, OutcomeSet, OutcomeVector
except ImportError:
    from models.game import MOGame, ObjectiveSpace
    from models.outcome import ActionProfile, OutcomeSet, OutcomeVector

logger = logging.getLogger("MOCRSolver")

DISTRIBUTIONS = ("uniform", "positive")
DEFAULT_MAX_PAYOFF = 100

# Explicit tobacco games hold 3 * 2^nu profiles per agent
TOBACCO_MAX_EXPLICIT = 12

TOBACCO_OBJECTIVES = ("money", "reward", "life-expectancy")
TOBACCO_EFFICIENCY = ("money", "life-expectancy")
INDUSTRY_ACTIONS = ("not-active", "active", "advertise&active")
CONSUMER_ACTIONS = ("not-smoking", "smoking")

# Consumer vectors by (consumer action, industry action)
CONSUMER_PAYOFFS = {
    (0, 0): (48, 1, 75), (0, 1): (48, 1, 75), (0, 2): (48, 1, 75),
    (1, 0): (48, 1, 75), (1, 1): (12, 3, 65), (1, 2): (0, 4, 55),
}
# Industry money per smoking consumer
INDUSTRY_REVENUE = (0, 26, 36)

WORST_PER_CONSUMER = (Fraction(36), Fraction(55))
EFFICIENT_PER_CONSUMER = (Fraction(48), Fraction(75))


class GeneratorError(Exception):
    """Raised for invalid generator parameters."""
    pass


class TobaccoSizeError(GeneratorError):
    """Raised when the explicit tobacco game would be too large."""
    pass


def _action_counts(n: int, alphas: Union[int, Sequence[int]]) -> List[int]:
    counts = [alphas] * n if isinstance(alphas, int) else list(alphas)
    if len(counts) != n:
        raise GeneratorError(f"{len(counts)} action counts given for {n} agents")
    if any(a < 1 for a in counts):
        raise GeneratorError(f"Action counts must be >= 1, got {counts}")
    return counts


def gen_random(
    n: int,
    alphas: Union[int, Sequence[int]],
    d: int,
    seed: int,
    distribution: str = "uniform",
    max_payoff: int = DEFAULT_MAX_PAYOFF,
) -> MOGame:
    """Random game with i.i.d. integer payoff components.

    Args:
        n: Number of agents
        alphas: Actions per agent, one count for all or a list
        d: Number of objectives
        seed: Seed for numpy's default generator; same seed, same game
        distribution: "uniform" draws from [0, max_payoff], "positive" from
            [1, max_payoff] so every outcome is strictly positive
        max_payoff: Largest component value K

    Returns:
        MOGame named after its parameters

    Raises:
        GeneratorError: On invalid parameters
    """
    if n < 1 or d < 1:
        raise GeneratorError(f"Need n >= 1 and d >= 1, got n={n}, d={d}")
    if distribution not in DISTRIBUTIONS:
        raise GeneratorError(f"Unknown distribution '{distribution}' (choose from {list(DISTRIBUTIONS)})")
    low = 0 if distribution == "uniform" else 1
    if max_payoff < low:
        raise GeneratorError(f"max_payoff must be >= {low} for the {distribution} distribution")
    counts = _action_counts(n, alphas)

    rng = np.random.default_rng(seed)
    profiles = list(itertools.product(*(range(a) for a in counts)))
    draws = rng.integers(low, max_payoff, size=(n, len(profiles), d), endpoint=True)

    payoffs: List[Dict[ActionProfile, OutcomeVector]] = [
        {
            profile: tuple(Fraction(int(c)) for c in draws[i, p])
            for p, profile in enumerate(profiles)
        }
        for i in range(n)
    ]
    game = MOGame(
        agents=[f"agent-{i + 1}" for i in range(n)],
        action_sets=[[f"a{j}" for j in range(a)] for a in counts],
        space=ObjectiveSpace(names=tuple(f"obj-{k + 1}" for k in range(d))),
        payoffs=payoffs,
        name=f"random-n{n}-d{d}-seed{seed}",
    )
    logger.debug(f"Generated {game.name} with {len(profiles)} profiles ({distribution})")
    return game


def gen_tobacco(nu: int) -> MOGame:
    """Explicit tobacco economy: one industry and ``nu`` consumers.

    The industry only cares about money; its other two objectives are 0.

    Raises:
        GeneratorError: If nu < 1
        TobaccoSizeError: If nu exceeds the explicit-size guard
    """
    if nu < 1:
        raise GeneratorError(f"The tobacco economy needs at least one consumer, got {nu}")
    if nu > TOBACCO_MAX_EXPLICIT:
        raise TobaccoSizeError(
            f"Explicit tobacco game limited to nu <= {TOBACCO_MAX_EXPLICIT} "
            f"(nu={nu} needs {3 * 2 ** nu} profiles); use the closed form instead"
        )

    n = nu + 1
    profiles = itertools.product(range(len(INDUSTRY_ACTIONS)), *[range(2)] * nu)
    payoffs: List[Dict[ActionProfile, OutcomeVector]] = [{} for _ in range(n)]
    for profile in profiles:
        industry, consumers = profile[0], profile[1:]
        smokers = sum(consumers)
        payoffs[0][profile] = (Fraction(INDUSTRY_REVENUE[industry] * smokers), Fraction(0), Fraction(0))
        for c, action in enumerate(consumers, start=1):
            payoffs[c][profile] = tuple(Fraction(v) for v in CONSUMER_PAYOFFS[(action, industry)])

    return MOGame(
        agents=["industry"] + [f"consumer-{c}" for c in range(1, nu + 1)],
        action_sets=[list(INDUSTRY_ACTIONS)] + [list(CONSUMER_ACTIONS)] * nu,
        space=ObjectiveSpace.from_names(TOBACCO_OBJECTIVES, TOBACCO_EFFICIENCY),
        payoffs=payoffs,
        name=f"tobacco-nu{nu}",
    )


@dataclass(frozen=True)
class TobaccoClosedForm:
    """Equilibrium and efficient outcomes of the tobacco economy without enumeration.

    With θ smokers the equilibrium welfare is θ(36,55) + (ν-θ)(48,75) on
    (money, life-expectancy); the only efficient outcome is ν(48,75).
    """

    nu: int
    worst: OutcomeSet = field(init=False)
    efficient: OutcomeSet = field(init=False)

    def __post_init__(self):
        if self.nu < 1:
            raise GeneratorError(f"The tobacco economy needs at least one consumer, got {self.nu}")
        object.__setattr__(self, "worst", OutcomeSet.from_vectors([self.equilibrium(self.nu)]))
        object.__setattr__(
            self, "efficient",
            OutcomeSet.from_vectors([tuple(self.nu * c for c in EFFICIENT_PER_CONSUMER)]),
        )

    @property
    def equilibria_count(self) -> int:
        return self.nu + 1

    def equilibrium(self, theta: int) -> OutcomeVector:
        """Equilibrium welfare with ``theta`` smokers."""
        if not 0 <= theta <= self.nu:
            raise GeneratorError(f"theta must lie in 0..{self.nu}, got {theta}")
        return tuple(
            theta * w + (self.nu - theta) * e
            for w, e in zip(WORST_PER_CONSUMER, EFFICIENT_PER_CONSUMER)
        )

    def iter_equilibria(self) -> Iterator[OutcomeVector]:
        """Every equilibrium outcome, θ = 0..ν, lazily."""
        return (self.equilibrium(theta) for theta in range(self.nu + 1))

    def equilibria(self, limit: Optional[int] = None) -> OutcomeSet:
        """Materialize the equilibrium outcomes (refuses more than ``limit``)."""
        if limit is not None and self.equilibria_count > limit:
            raise TobaccoSizeError(
                f"{self.equilibria_count} equilibrium outcomes exceed the limit of {limit}"
            )
        return OutcomeSet.from_vectors(self.iter_equilibria())


def tobacco_closed_form(nu: int) -> TobaccoClosedForm:
    return TobaccoClosedForm(nu=nu)
