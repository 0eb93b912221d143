"""Efficiency report data model."""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

from .game import MOGame, ObjectiveSpace
from .outcome import ActionProfile, OutcomeSet

if TYPE_CHECKING:
    from core.mocr import RatioSet


@dataclass
class EfficiencyReport:
    """Everything one analysis of a game produced.

    ``mocr`` is None when the game has no Pareto-Nash equilibrium.
    """

    game: MOGame
    space: ObjectiveSpace
    profiles: Tuple[ActionProfile, ...]
    outcomes: OutcomeSet
    equilibria: OutcomeSet
    worst: OutcomeSet
    efficient: OutcomeSet
    mocr: Optional['RatioSet']
    representation_length: int
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "defined" if self.mocr is not None else "undefined"

    @property
    def sizes(self) -> Dict[str, int]:
        return {
            "profiles": self.game.profile_count,
            "pareto_nash": len(self.profiles),
            "outcomes": len(self.outcomes),
            "equilibria": len(self.equilibria),
            "q": len(self.worst),
            "m": len(self.efficient),
            "mocr": len(self.mocr) if self.mocr is not None else 0,
            "L": self.representation_length,
        }

    def profile_labels(self, profile: ActionProfile) -> List[str]:
        return self.game.profile_labels(profile)
