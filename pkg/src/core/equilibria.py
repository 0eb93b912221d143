"""Pareto-Nash equilibria of normal-form multi-objective games."""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

try:
    from ..models.game import GameError, MOGame, ObjectiveSpace
    from ..models.outcome import ActionProfile, OutcomeSet
    from ..utils.parallel import parallel_map
except ImportError:
    from models.game import GameError, MOGame, ObjectiveSpace
    from models.outcome import ActionProfile, OutcomeSet
    from utils.parallel import parallel_map

from .pareto import efficient_indices, worst_subset

logger = logging.getLogger("MOCRSolver")


@dataclass(frozen=True)
class EquilibriumSet:
    """Pareto-Nash profiles with their welfare outcomes and worst outcomes."""

    profiles: Tuple[ActionProfile, ...]
    outcomes: OutcomeSet
    worst: OutcomeSet

    def is_empty(self) -> bool:
        return not self.profiles


def _insert(adversary: Sequence[int], agent: int, action: int) -> ActionProfile:
    return tuple(adversary[:agent]) + (action,) + tuple(adversary[agent:])


def _efficient_actions(game: MOGame, agent: int, adversary: Sequence[int]) -> List[int]:
    table = game.payoffs[agent]
    column = [table[_insert(adversary, agent, b)] for b in range(game.action_counts[agent])]
    distinct = sorted(set(column))
    efficient = {distinct[i] for i in efficient_indices(distinct)}
    return [b for b, vector in enumerate(column) if vector in efficient]


def best_response_actions(game: MOGame, agent: int, adversary: Sequence[int]) -> List[int]:
    """Actions of ``agent`` whose vectors are Pareto-efficient against ``adversary``.

    All d objectives are used, never the efficiency mask. Equal vectors are
    all efficient.

    Args:
        game: The game
        agent: Agent index
        adversary: Actions of the other agents, in agent order (length n-1)

    Returns:
        Sorted action indices

    Raises:
        GameError: If the agent or the adversary profile is invalid
    """
    game.validate_agent(agent)
    adversary = tuple(adversary)
    if len(adversary) != game.n - 1:
        raise GameError(f"Adversary profile {list(adversary)} needs {game.n - 1} actions")
    game.validate_profile(_insert(adversary, agent, 0))
    return _efficient_actions(game, agent, adversary)


def _marked_profiles(game: MOGame, agent: int) -> Set[ActionProfile]:
    counts = game.action_counts
    others = [range(c) for i, c in enumerate(counts) if i != agent]
    marked = set()
    for adversary in itertools.product(*others):
        for b in _efficient_actions(game, agent, adversary):
            marked.add(_insert(adversary, agent, b))
    return marked


def pareto_nash_profiles(game: MOGame, threads: Optional[int] = 1) -> List[ActionProfile]:
    """All Pareto-Nash equilibria, by marking each agent's efficient replies.

    For every agent and every profile of the others, the agent's efficient
    actions are marked; a profile is an equilibrium when all agents mark it.
    An empty list is a valid answer.
    """
    per_agent = parallel_map(lambda i: _marked_profiles(game, i), list(range(game.n)), threads)
    profiles = set.intersection(*per_agent)
    logger.debug(f"Pareto-Nash marking: {len(profiles)} of {game.profile_count} profiles")
    return sorted(profiles)


def equilibrium_analysis(game: MOGame, space: Optional[ObjectiveSpace] = None, threads: Optional[int] = 1) -> EquilibriumSet:
    """Pareto-Nash profiles, their welfare outcomes and the worst outcomes.

    Args:
        game: The game
        space: Objective space for welfare (defaults to the game's own)
        threads: Worker threads for the marking phase

    Returns:
        EquilibriumSet; all three parts are empty when no equilibrium exists
    """
    profiles = pareto_nash_profiles(game, threads=threads)
    outcomes = OutcomeSet.from_profiles((p, game.welfare(p, space)) for p in profiles)
    worst = worst_subset(outcomes)
    logger.info(
        f"Equilibria: |PN|={len(profiles)}, |E|={len(outcomes)}, |WST[E]|={len(worst)}"
    )
    return EquilibriumSet(profiles=tuple(profiles), outcomes=outcomes, worst=worst)
