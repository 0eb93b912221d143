"""Multi-objective coordination ratio (MO-CR).

For worst equilibrium outcomes y^1..y^q and efficient outcomes z^1..z^m, the
guaranteed ratios are the intersection over t of the cone-unions
∪_j C(y^t / z^j). ``mo_cr`` develops that intersection layer by layer and
keeps only efficient ratios after each layer:

    D^1 = EFF[{y^1 / z}],   D^t = EFF[{ρ ∧ (y^t / z) | ρ ∈ D^(t-1), z ∈ F}]

``mo_cr_bruteforce`` enumerates all m^q paths instead and is kept as the
reference oracle.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

try:
    from ..models.game import MOGame, ObjectiveSpace
    from ..models.outcome import (
        OutcomeError,
        OutcomeSet,
        OutcomeVector,
        PositivityError,
        format_vector,
        require_positive,
    )
    from ..models.report import EfficiencyReport
    from ..utils.parallel import chunked, parallel_map
except ImportError:
    from models.game import MOGame, ObjectiveSpace
    from models.outcome import (
        OutcomeError,
        OutcomeSet,
        OutcomeVector,
        PositivityError,
        format_vector,
        require_positive,
    )
    from models.report import EfficiencyReport
    from utils.parallel import chunked, parallel_map

from .cone_algebra import ConeUnion, canonicalize, intersect, ratio, scale_vector
from .equilibria import equilibrium_analysis
from .pareto import efficient_indices, efficient_subset, rank_encode, weak_dominates

logger = logging.getLogger("MOCRSolver")

DEFAULT_BRUTEFORCE_BUDGET = 10 ** 6


class MOCRError(Exception):
    """Base class for MO-CR computation errors."""
    pass


class BudgetExceededError(MOCRError):
    """Raised when the brute-force oracle would enumerate too many paths."""
    pass


@dataclass(frozen=True)
class RatioCheck:
    """Outcome of testing one ratio vector against E and F.

    ``witnesses`` maps each equilibrium outcome y to an efficient z with
    y ≿ ρ ⋆ z; when the check fails, ``violation`` is the first y without one.
    """

    holds: bool
    witnesses: Dict[OutcomeVector, OutcomeVector] = field(default_factory=dict)
    violation: Optional[OutcomeVector] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class RatioSet:
    """MO-CR result: the efficient guaranteed ratios and their witnesses.

    ``witnesses[ρ][y]`` is the efficient outcome matched to worst equilibrium
    outcome y along the path that produced ρ.
    """

    ratios: OutcomeSet
    region: ConeUnion
    witnesses: Dict[OutcomeVector, Dict[OutcomeVector, OutcomeVector]]
    worst: OutcomeSet
    efficient: OutcomeSet

    @property
    def q(self) -> int:
        return len(self.worst)

    @property
    def m(self) -> int:
        return len(self.efficient)

    @property
    def size_bound(self) -> int:
        """(q*m)^(d-1), the bound on the number of ratios."""
        d = self.ratios.dimension or self.worst.dimension or 1
        return (self.q * self.m) ** (d - 1)

    def __len__(self) -> int:
        return len(self.ratios)

    def __iter__(self):
        return iter(self.ratios)

    def __contains__(self, rho) -> bool:
        return rho in self.ratios


def _validate_inputs(E: OutcomeSet, F: OutcomeSet):
    if E.is_empty():
        raise OutcomeError("The equilibrium outcome set is empty")
    if F.is_empty():
        raise OutcomeError("The efficient outcome set is empty")
    if E.dimension != F.dimension:
        raise OutcomeError(
            f"Equilibrium outcomes have {E.dimension} objectives, efficient outcomes {F.dimension}"
        )
    for z in F:
        require_positive(z, "Efficient outcome")


def _as_set(X) -> OutcomeSet:
    return X if isinstance(X, OutcomeSet) else OutcomeSet.from_vectors(X)


def check_ratio(rho: Sequence, E, F) -> RatioCheck:
    """Does ``rho`` bound the inefficiency, i.e. ∀y ∈ E ∃z ∈ F with y ≿ ρ ⋆ z?

    Args:
        rho: Candidate ratio vector
        E: Equilibrium outcomes (or worst equilibrium outcomes)
        F: Efficient outcomes, strictly positive

    Returns:
        RatioCheck with one witness per y, or the violating y

    Raises:
        OutcomeError: On empty sets or mismatched dimensions
        PositivityError: If an element of F has a zero component
    """
    E, F = _as_set(E), _as_set(F)
    _validate_inputs(E, F)
    rho = tuple(Fraction(c) for c in rho)
    scaled = [(z, scale_vector(rho, z)) for z in F]
    witnesses = {}
    for y in E:
        match = next((z for z, target in scaled if weak_dominates(y, target)), None)
        if match is None:
            return RatioCheck(holds=False, witnesses=witnesses, violation=y)
        witnesses[y] = match
    return RatioCheck(holds=True, witnesses=witnesses)


def _coded_ratio_table(ys: Sequence[OutcomeVector], zs: Sequence[OutcomeVector]):
    """Rank-encoded table of y^t / z^j plus the per-objective decoding maps.

    Meets and dominance on the codes agree with those on the exact ratios.
    """
    flat = [ratio(y, z) for y in ys for z in zs]
    codes = rank_encode(flat)
    decode: List[Dict[int, Fraction]] = [{} for _ in range(len(flat[0]))]
    for vector, code in zip(flat, codes):
        for k, (value, rank) in enumerate(zip(vector, code)):
            decode[k][rank] = value
    m = len(zs)
    return [codes[t * m:(t + 1) * m] for t in range(len(ys))], decode


def _decode_paths(coded_paths, decode) -> Dict[OutcomeVector, Tuple[int, ...]]:
    return {
        tuple(decode[k][c] for k, c in enumerate(code)): path
        for code, path in coded_paths.items()
    }


def _build_result(
    paths: Dict[OutcomeVector, Tuple[int, ...]],
    worst: OutcomeSet,
    efficient: OutcomeSet,
) -> RatioSet:
    ys, zs = worst.vectors, efficient.vectors
    ratios = OutcomeSet.from_vectors(paths)
    witnesses = {
        rho: {ys[t]: zs[j] for t, j in enumerate(paths[rho])}
        for rho in ratios
    }
    return RatioSet(
        ratios=ratios,
        region=ConeUnion(summits=ratios.vectors),
        witnesses=witnesses,
        worst=worst,
        efficient=efficient,
    )


def _keep_efficient(candidates: List[Tuple[Tuple[int, ...], Tuple[int, ...]]]) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    first: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for code, path in candidates:
        first.setdefault(code, path)
    codes = list(first)
    return {codes[i]: first[codes[i]] for i in efficient_indices(codes)}


def _layered(table, order: Sequence[int], threads: Optional[int]) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """Run the meet-and-EFF recursion over the rows of ``table`` in ``order``.

    Paths come back indexed by row, whatever the processing order.
    """
    first, rest = order[0], order[1:]
    layer = _keep_efficient([(code, (j,)) for j, code in enumerate(table[first])])
    logger.debug(f"MO-CR layer 1/{len(table)}: {len(layer)} ratios")

    for step, t in enumerate(rest, start=2):
        row = table[t]

        def extend(chunk, row=row):
            return [
                (tuple(map(min, rho, code)), path + (j,))
                for rho, path in chunk
                for j, code in enumerate(row)
            ]

        chunks = chunked(sorted(layer.items()), (threads or 1) * 4)
        candidates = [c for part in parallel_map(extend, chunks, threads) for c in part]
        layer = _keep_efficient(candidates)
        logger.debug(f"MO-CR layer {step}/{len(table)}: {len(candidates)} meets, {len(layer)} kept")

    position = {t: i for i, t in enumerate(order)}
    return {
        code: tuple(path[position[t]] for t in range(len(table)))
        for code, path in layer.items()
    }


def mo_cr(worstE, F, threads: Optional[int] = 1, order: Optional[Sequence[int]] = None) -> RatioSet:
    """MO-CR = EFF[R[WST[E], F]] by the layered meet-and-EFF recursion.

    Layers follow the canonical order of ``worstE`` unless ``order`` gives a
    permutation of its indices; the ratios do not depend on it. Each
    surviving ratio keeps the first path that produced it, from which the
    witnesses are read. The recursion runs on rank codes of the exact ratios
    and decodes the survivors at the end.

    Args:
        worstE: Worst equilibrium outcomes (any equilibrium outcomes work)
        F: Efficient outcomes, strictly positive
        threads: Worker threads for meet generation within a layer
        order: Processing order of the points of ``worstE``, by canonical index

    Returns:
        RatioSet

    Raises:
        OutcomeError: On empty inputs, mismatched dimensions or a bad ``order``
        PositivityError: If an element of F has a zero component
    """
    worst, efficient = _as_set(worstE), _as_set(F)
    _validate_inputs(worst, efficient)
    if order is None:
        order = range(len(worst))
    elif sorted(order) != list(range(len(worst))):
        raise OutcomeError(f"Layer order {list(order)} is not a permutation of 0..{len(worst) - 1}")
    table, decode = _coded_ratio_table(worst.vectors, efficient.vectors)
    return _build_result(_decode_paths(_layered(table, list(order), threads), decode), worst, efficient)


def mo_cr_bruteforce(worstE, F, budget: int = DEFAULT_BRUTEFORCE_BUDGET) -> RatioSet:
    """MO-CR by enumerating every path of choices of z for each y.

    Takes the meet of y^t / z^π(t) along each path π and returns the
    efficient meets. Used as an independent oracle for ``mo_cr``.

    Raises:
        BudgetExceededError: If m^q exceeds ``budget``
    """
    worst, efficient = _as_set(worstE), _as_set(F)
    _validate_inputs(worst, efficient)
    q, m = len(worst), len(efficient)
    if m ** q > budget:
        raise BudgetExceededError(
            f"Brute force needs {m}^{q} paths, over the budget of {budget}"
        )

    coded, decode = _coded_ratio_table(worst.vectors, efficient.vectors)

    # Depth-first over path prefixes; each prefix carries its running meet.
    first: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    stack = [(1, code, (j,)) for j, code in reversed(list(enumerate(coded[0])))]
    while stack:
        t, prefix, path = stack.pop()
        if t == q:
            first.setdefault(prefix, path)
            continue
        for j in reversed(range(m)):
            stack.append((t + 1, tuple(map(min, prefix, coded[t][j])), path + (j,)))
    meets = list(first)
    efficient_meets = {meets[i]: first[meets[i]] for i in efficient_indices(meets)}
    return _build_result(_decode_paths(efficient_meets, decode), worst, efficient)


def guaranteed_region(y: Sequence, F) -> ConeUnion:
    """R[y, F]: the ratios guaranteed for one equilibrium outcome y."""
    F = _as_set(F)
    return canonicalize(ratio(y, z) for z in F)


def guaranteed_ratios(E, F) -> ConeUnion:
    """R[E, F] as a cone-union, by intersecting R[y, F] over y ∈ E."""
    E, F = _as_set(E), _as_set(F)
    _validate_inputs(E, F)
    region = None
    for y in E:
        current = guaranteed_region(y, F)
        region = current if region is None else intersect(region, current)
    return region


def full_analysis(
    game: MOGame,
    space: Optional[ObjectiveSpace] = None,
    threads: Optional[int] = 1,
) -> EfficiencyReport:
    """Both phases: equilibria and efficient outcomes, then the MO-CR.

    Args:
        game: The game
        space: Objective space whose mask defines welfare (defaults to the game's)
        threads: Worker threads

    Returns:
        EfficiencyReport; its MO-CR is None when the game has no equilibrium

    Raises:
        PositivityError: If an efficient outcome has a zero component
    """
    space = space or game.space
    timings: Dict[str, float] = {}

    start = time.perf_counter()
    outcomes = game.outcome_set(space, threads=threads)
    efficient = efficient_subset(outcomes)
    timings["outcomes"] = time.perf_counter() - start

    start = time.perf_counter()
    equilibria = equilibrium_analysis(game, space, threads=threads)
    timings["equilibria"] = time.perf_counter() - start

    ratio_set = None
    start = time.perf_counter()
    if equilibria.is_empty():
        logger.warning(f"Game '{game.name}' has no Pareto-Nash equilibrium; MO-CR undefined")
    else:
        for z in efficient:
            if any(c <= 0 for c in z):
                labels = [game.profile_labels(p) for p in efficient.witnesses(z)]
                raise PositivityError(
                    f"Efficient outcome {format_vector(z)} (profiles {labels}) has a zero component"
                )
        ratio_set = mo_cr(equilibria.worst, efficient, threads=threads)
    timings["mocr"] = time.perf_counter() - start

    logger.info(
        f"Analysis of '{game.name}': |A|={len(outcomes)}, |F|={len(efficient)}, "
        f"|PN|={len(equilibria.profiles)}, "
        f"|MO-CR|={len(ratio_set) if ratio_set is not None else 'undefined'}"
    )
    return EfficiencyReport(
        game=game,
        space=space,
        profiles=equilibria.profiles,
        outcomes=outcomes,
        equilibria=equilibria.outcomes,
        worst=equilibria.worst,
        efficient=efficient,
        mocr=ratio_set,
        representation_length=game.representation_length(),
        timings=timings,
    )
