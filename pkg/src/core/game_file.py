"""Game files and outcome-set files.

A game file is JSON:

    {
      "format": "mog/1",
      "name": "tobacco-nu2",
      "objectives": {"names": ["money", "reward", "life"], "efficiency": ["money", "life"]},
      "agents": [{"name": "industry", "actions": ["not-active", "active"]}, ...],
      "payoffs": {"0|1,0,0": [26, 0, 0], "1|1,0,0": ["48", "1", "75"], ...}
    }

Payoff keys are "i|a1,...,an" with 0-based agent and action indices.
Components are integers or exact rational strings ("0.75", "11/15"); JSON
floats are rejected.

An outcome-set file holds one vector per line, components comma-separated.
Blank lines and lines starting with '#' are ignored.
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, ValidationError

try:
    from ..models.game import GameError, MOGame, ObjectiveSpace
    from ..models.outcome import (
        ActionProfile,
        OutcomeError,
        OutcomeSet,
        OutcomeVector,
        format_rational,
        make_vector,
    )
except ImportError:
    from models.game import GameError, MOGame, ObjectiveSpace
    from models.outcome import (
        ActionProfile,
        OutcomeError,
        OutcomeSet,
        OutcomeVector,
        format_rational,
        make_vector,
    )

logger = logging.getLogger("MOCRSolver")

FORMAT_VERSION = "mog/1"

Component = Union[StrictInt, StrictStr]


class GameLoadError(Exception):
    """Raised when a game or outcome-set file cannot be read or validated."""
    pass


class ObjectivesBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    names: List[str] = Field(min_length=1)
    efficiency: Optional[List[str]] = None


class AgentBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    actions: List[str] = Field(min_length=1)


class GameFileModel(BaseModel):
    """Schema of a game file."""

    model_config = ConfigDict(extra="forbid")

    format: str = FORMAT_VERSION
    name: str = ""
    objectives: ObjectivesBlock
    agents: List[AgentBlock] = Field(min_length=1)
    payoffs: Dict[str, List[Component]]


def _parse_key(key: str, n: int) -> tuple:
    try:
        agent_part, profile_part = key.split("|")
        agent = int(agent_part)
        profile = tuple(int(a) for a in profile_part.split(","))
    except ValueError:
        raise GameLoadError(f"Malformed payoff key '{key}' (expected 'i|a1,...,an')")
    if not 0 <= agent < n:
        raise GameLoadError(f"Payoff key '{key}': agent index {agent} outside 0..{n - 1}")
    return agent, profile


def _format_key(agent: int, profile: ActionProfile) -> str:
    return f"{agent}|" + ",".join(str(a) for a in profile)


def _json_component(value) -> Union[int, str]:
    return value.numerator if value.denominator == 1 else format_rational(value)


def game_from_dict(data: dict) -> MOGame:
    """Validate a decoded game file and build the game.

    Raises:
        GameLoadError: On schema violations, bad keys or invalid payoffs,
            naming the offending entry
    """
    try:
        model = GameFileModel.model_validate(data)
    except ValidationError as e:
        raise GameLoadError(f"Invalid game file: {e}") from e
    if model.format != FORMAT_VERSION:
        raise GameLoadError(f"Unsupported game format '{model.format}' (expected '{FORMAT_VERSION}')")

    try:
        space = ObjectiveSpace.from_names(model.objectives.names, model.objectives.efficiency)
    except GameError as e:
        raise GameLoadError(str(e)) from e

    n = len(model.agents)
    action_sets = [agent.actions for agent in model.agents]
    payoffs: List[Dict[ActionProfile, OutcomeVector]] = [{} for _ in range(n)]
    for key, components in model.payoffs.items():
        agent, profile = _parse_key(key, n)
        if len(profile) != n:
            raise GameLoadError(f"Payoff key '{key}' has {len(profile)} actions, expected {n}")
        for i, (a, actions) in enumerate(zip(profile, action_sets)):
            if not 0 <= a < len(actions):
                raise GameLoadError(
                    f"Payoff key '{key}': action {a} of agent {i} outside 0..{len(actions) - 1}"
                )
        try:
            payoffs[agent][profile] = make_vector(components)
        except OutcomeError as e:
            raise GameLoadError(f"Payoff '{key}': {e}") from e

    try:
        return MOGame(
            agents=[agent.name for agent in model.agents],
            action_sets=action_sets,
            space=space,
            payoffs=payoffs,
            name=model.name,
        )
    except GameError as e:
        raise GameLoadError(str(e)) from e


def game_to_dict(game: MOGame) -> dict:
    """Serialize a game to the file layout, entries in agent-then-profile order."""
    efficiency = list(game.space.efficiency_names)
    return {
        "format": FORMAT_VERSION,
        "name": game.name,
        "objectives": {
            "names": list(game.space.names),
            "efficiency": efficiency,
        },
        "agents": [
            {"name": name, "actions": list(actions)}
            for name, actions in zip(game.agents, game.action_sets)
        ],
        "payoffs": {
            _format_key(i, profile): [_json_component(c) for c in game.payoffs[i][profile]]
            for i in range(game.n)
            for profile in game.profiles()
        },
    }


def load_game(path: Union[str, Path]) -> MOGame:
    """Load and validate a game file.

    Args:
        path: Path to a JSON game file

    Returns:
        Validated MOGame with exact payoffs

    Raises:
        GameLoadError: If the file is missing, not JSON, or invalid
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise GameLoadError(f"Cannot read game file {path}: {e}") from e

    game = game_from_dict(data)
    logger.info(
        f"Loaded game '{game.name}' from {path}: n={game.n}, actions={list(game.action_counts)}, d={game.d}"
    )
    return game


def save_game(game: MOGame, path: Union[str, Path]):
    """Write a game file; identical games produce identical bytes."""
    path = Path(path)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(game_to_dict(game), f, indent=2, ensure_ascii=False)
        f.write("\n")
    logger.debug(f"Saved game '{game.name}' to {path}")


def parse_vector_text(text: str) -> OutcomeVector:
    """Parse "a,b,..." into an exact vector.

    Raises:
        OutcomeError: If a component does not parse
    """
    return make_vector(part for part in text.split(","))


def load_outcome_set(path: Union[str, Path]) -> OutcomeSet:
    """Read an outcome-set file.

    Raises:
        GameLoadError: On unreadable files, bad components or mixed
            dimensions, naming the line
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            lines = f.readlines()
    except OSError as e:
        raise GameLoadError(f"Cannot read outcome set {path}: {e}") from e

    vectors = []
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vector = parse_vector_text(line)
        except OutcomeError as e:
            raise GameLoadError(f"{path}:{number}: {e}") from e
        if vectors and len(vector) != len(vectors[0]):
            raise GameLoadError(
                f"{path}:{number}: {len(vector)} components, previous lines have {len(vectors[0])}"
            )
        vectors.append(vector)

    outcomes = OutcomeSet.from_vectors(vectors)
    logger.debug(f"Loaded {len(outcomes)} outcome vectors from {path}")
    return outcomes


def save_outcome_set(outcomes, path: Union[str, Path], header: Optional[str] = None):
    """Write an outcome set in canonical order, one vector per line."""
    outcomes = outcomes if isinstance(outcomes, OutcomeSet) else OutcomeSet.from_vectors(outcomes)
    path = Path(path)
    with open(path, 'w', encoding='utf-8') as f:
        if header:
            for line in header.splitlines():
                f.write(f"# {line}\n")
        for vector in outcomes:
            f.write(",".join(format_rational(c) for c in vector) + "\n")
