"""Multi-objective normal-form game model."""

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

try:
    from ..utils.parallel import chunked, parallel_map
except ImportError:
    from utils.parallel import chunked, parallel_map

from .outcome import (
    ActionProfile,
    OutcomeSet,
    OutcomeVector,
    format_vector,
    is_nonnegative,
)


class GameError(Exception):
    """Raised for invalid games, agents, profiles or objective spaces."""
    pass


@dataclass(frozen=True)
class ObjectiveSpace:
    """Objective names plus the subset of objectives that count for welfare.

    ``efficiency_mask`` holds 0-based objective indices in the order welfare
    vectors list them; an empty mask means all objectives.
    """

    names: Tuple[str, ...]
    efficiency_mask: Tuple[int, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise GameError("At least one objective is required")
        if len(set(names)) != len(names):
            raise GameError(f"Duplicate objective names in {list(names)}")

        mask = tuple(self.efficiency_mask) or tuple(range(len(names)))
        for k in mask:
            if not 0 <= k < len(names):
                raise GameError(f"Efficiency objective index {k} outside 0..{len(names) - 1}")
        if len(set(mask)) != len(mask):
            raise GameError(f"Efficiency mask {list(mask)} repeats an objective")
        object.__setattr__(self, "efficiency_mask", mask)

    @classmethod
    def from_names(cls, names: Sequence[str], efficiency: Optional[Sequence[str]] = None) -> 'ObjectiveSpace':
        """Create a space from objective names and optional welfare objective names.

        Raises:
            GameError: If an efficiency objective is not a declared objective
        """
        names = tuple(names)
        if not efficiency:
            return cls(names=names)
        mask = []
        for label in efficiency:
            if label not in names:
                raise GameError(f"Unknown efficiency objective '{label}' (objectives: {list(names)})")
            mask.append(names.index(label))
        return cls(names=names, efficiency_mask=tuple(mask))

    @property
    def d(self) -> int:
        return len(self.names)

    @property
    def efficiency_names(self) -> Tuple[str, ...]:
        return tuple(self.names[k] for k in self.efficiency_mask)

    def project(self, vector: OutcomeVector) -> OutcomeVector:
        """Restrict a full vector to the efficiency objectives, in mask order."""
        return tuple(vector[k] for k in self.efficiency_mask)


@dataclass
class MOGame:
    """A multi-objective game in normal form.

    ``payoffs[i]`` maps every action profile to agent i's d-dimensional,
    nonnegative evaluation vector. The game is treated as immutable once built.
    """

    agents: List[str]
    action_sets: List[List[str]]
    space: ObjectiveSpace
    payoffs: List[Dict[ActionProfile, OutcomeVector]]
    name: str = ""
    _profiles: Tuple[ActionProfile, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        self.agents = list(self.agents)
        self.action_sets = [list(actions) for actions in self.action_sets]
        self._validate()
        self._profiles = tuple(itertools.product(*(range(a) for a in self.action_counts)))
        self._validate_payoffs()

    def _validate(self):
        if not self.agents:
            raise GameError("A game needs at least one agent")
        if len(self.action_sets) != len(self.agents):
            raise GameError(
                f"{len(self.agents)} agents but {len(self.action_sets)} action sets"
            )
        for agent, actions in zip(self.agents, self.action_sets):
            if not actions:
                raise GameError(f"Agent '{agent}' has no actions")
        if len(self.payoffs) != len(self.agents):
            raise GameError(
                f"{len(self.agents)} agents but {len(self.payoffs)} payoff tables"
            )

    def _validate_payoffs(self):
        expected = len(self._profiles)
        for i, table in enumerate(self.payoffs):
            if len(table) != expected:
                missing = next((p for p in self._profiles if p not in table), None)
                if missing is not None:
                    raise GameError(
                        f"Payoff of agent {i} missing for profile {self.profile_labels(missing)}"
                    )
                raise GameError(f"Agent {i} has {len(table)} payoff entries, expected {expected}")
            for profile in self._profiles:
                vector = table.get(profile)
                if vector is None:
                    raise GameError(
                        f"Payoff of agent {i} missing for profile {self.profile_labels(profile)}"
                    )
                if len(vector) != self.d:
                    raise GameError(
                        f"Payoff of agent {i} at {list(profile)} has {len(vector)} components, expected {self.d}"
                    )
                if not is_nonnegative(vector):
                    raise GameError(
                        f"Payoff of agent {i} at {list(profile)} is negative: {format_vector(vector)}"
                    )

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def d(self) -> int:
        return self.space.d

    @property
    def action_counts(self) -> Tuple[int, ...]:
        return tuple(len(actions) for actions in self.action_sets)

    @property
    def profile_count(self) -> int:
        return math.prod(self.action_counts)

    def profiles(self) -> Iterator[ActionProfile]:
        """All action profiles in lexicographic order."""
        return iter(self._profiles)

    def validate_agent(self, agent: int):
        if not isinstance(agent, int) or not 0 <= agent < self.n:
            raise GameError(f"Agent index {agent!r} outside 0..{self.n - 1}")

    def validate_profile(self, profile: Sequence[int]) -> ActionProfile:
        """Check a profile against the action sets and return it as a tuple.

        Raises:
            GameError: If the length or any action index is out of range
        """
        profile = tuple(profile)
        if len(profile) != self.n:
            raise GameError(f"Profile {list(profile)} has {len(profile)} actions, expected {self.n}")
        for i, (a, count) in enumerate(zip(profile, self.action_counts)):
            if not isinstance(a, int) or not 0 <= a < count:
                raise GameError(f"Action {a!r} of agent {i} outside 0..{count - 1}")
        return profile

    def profile_labels(self, profile: Sequence[int]) -> List[str]:
        """Action labels of a profile, for reports."""
        return [self.action_sets[i][a] for i, a in enumerate(profile)]

    def evaluate(self, agent: int, profile: Sequence[int]) -> OutcomeVector:
        """Agent ``agent``'s evaluation vector at ``profile``, exactly as stored.

        Raises:
            GameError: If the agent or profile is out of range
        """
        self.validate_agent(agent)
        return self.payoffs[agent][self.validate_profile(profile)]

    def welfare(self, profile: Sequence[int], space: Optional[ObjectiveSpace] = None) -> OutcomeVector:
        """Utilitarian welfare: sum of all agents' vectors on the efficiency objectives.

        Args:
            profile: Action profile
            space: Objective space whose mask selects the welfare objectives
                (defaults to the game's own)

        Returns:
            Welfare vector, components in mask order
        """
        profile = self.validate_profile(profile)
        return self._welfare(profile, self._space(space))

    def _welfare(self, profile: ActionProfile, space: ObjectiveSpace) -> OutcomeVector:
        return tuple(
            sum(table[profile][k] for table in self.payoffs)
            for k in space.efficiency_mask
        )

    def outcome_set(self, space: Optional[ObjectiveSpace] = None, threads: Optional[int] = 1) -> OutcomeSet:
        """The set of welfare outcomes with back-maps to their profiles."""
        space = self._space(space)

        def welfare_chunk(profiles):
            return [(p, self._welfare(p, space)) for p in profiles]

        chunks = chunked(self._profiles, (threads or 1) * 4)
        pairs = [pair for part in parallel_map(welfare_chunk, chunks, threads) for pair in part]
        return OutcomeSet.from_profiles(pairs)

    def representation_length(self) -> int:
        """Normal-form size: n * (product of action counts) * d."""
        return self.n * self.profile_count * self.d

    def _space(self, space: Optional[ObjectiveSpace]) -> ObjectiveSpace:
        if space is None:
            return self.space
        if space.d != self.d:
            raise GameError(f"Objective space has {space.d} objectives, game has {self.d}")
        return space
