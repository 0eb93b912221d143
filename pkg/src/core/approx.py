"""ε-covers of outcome sets and the approximate MO-CR.

Covers use a log-scale grid with base g = 2^(2^-k), the largest base of that
family not above 1+ε: component j of a strictly positive vector falls in
cell c when g^c ≤ y_j < g^(c+1). Two points of one cell are within a factor
g ≤ 1+ε of each other on every objective. Grids of the family nest, so a
larger ε never splits points that a smaller ε keeps together.

A lower cover E of a set ℰ satisfies
    ∀y ∈ ℰ ∃y' ∈ E: y ≿ y'          and   ∀y' ∈ E ∃y ∈ ℰ: (1+ε)y' ≿ y
and an upper cover F of ℱ satisfies
    ∀z' ∈ F ∃z ∈ ℱ: z' ≿ z          and   ∀z ∈ ℱ ∃z' ∈ F: (1+ε)z ≿ z'
With such covers the guaranteed ratios of (E, F) are guaranteed for (ℰ, ℱ),
and every exact ratio ρ has an approximate ρ' with (1+ε1)(1+ε2)ρ' ≿ ρ.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

try:
    from ..models.outcome import (
        OutcomeError,
        OutcomeSet,
        OutcomeVector,
        RationalLike,
        parse_rational,
        require_positive,
    )
except ImportError:
    from models.outcome import (
        OutcomeError,
        OutcomeSet,
        OutcomeVector,
        RationalLike,
        parse_rational,
        require_positive,
    )

from .cone_algebra import scale_vector
from .mocr import RatioSet, mo_cr
from .pareto import efficient_subset, weak_dominates, worst_subset

logger = logging.getLogger("MOCRSolver")


class CoverError(Exception):
    """Raised when a supplied cover fails verification."""
    pass


class CoverDirection(Enum):
    """Which side of the original set a cover approximates from."""
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class CoverSpec:
    """Precision and side of a requested cover."""

    epsilon: Fraction
    direction: CoverDirection

    def __post_init__(self):
        object.__setattr__(self, "epsilon", parse_rational(self.epsilon))
        if self.epsilon <= 0:
            raise OutcomeError(f"Cover precision must be > 0, got {self.epsilon}")

    @property
    def base(self) -> Fraction:
        return 1 + self.epsilon

    @property
    def level(self) -> int:
        """Level of the grid the cover is built on."""
        return grid_level(self.epsilon)


@dataclass(frozen=True)
class ApproximationCertificate:
    """Guarantee attached to an approximate MO-CR.

    Every exact ratio ρ is covered by some returned ρ' with factor ⋆ ρ' ≿ ρ,
    and every returned ρ' is an exact guaranteed ratio.
    """

    eps1: Fraction
    eps2: Fraction
    factor: Fraction
    equilibria_cover_size: int
    efficient_cover_size: int
    verified: bool


_LOG2 = math.log(2)
_FLOAT_SLACK = 1e-9


def _log(value: Fraction) -> float:
    return math.log(value.numerator) - math.log(value.denominator)


def _floor_log2(value: Fraction) -> int:
    p, q = value.numerator, value.denominator
    e = p.bit_length() - q.bit_length()
    if (p << max(-e, 0)) < (q << max(e, 0)):
        e -= 1
    return e


def _reaches(value: Fraction, level: int, c: int) -> bool:
    """Whether value^(2^level) >= 2^c, for level >= 0."""
    n = 2 ** level
    p, q = value.numerator ** n, value.denominator ** n
    return p >= q << c if c >= 0 else p << -c >= q


def _base_fits(bound: Fraction, level: int) -> bool:
    """Whether the grid base 2^(2^-level) is at most ``bound``."""
    if level <= 0:
        return 2 ** (2 ** -level) <= bound
    return _reaches(bound, level, 1)


def grid_level(epsilon: RationalLike) -> int:
    """Level k of the coarsest grid base 2^(2^-k) not exceeding 1 + epsilon.

    Grids of consecutive levels nest: each cell of level k is the union of
    two cells of level k + 1.

    Raises:
        OutcomeError: If epsilon is not positive or too small for a float log
    """
    epsilon = parse_rational(epsilon)
    if epsilon <= 0:
        raise OutcomeError(f"Cover precision must be > 0, got {epsilon}")
    bound = 1 + epsilon
    if epsilon < 1:
        log2_bound = math.log1p(epsilon.numerator / epsilon.denominator) / _LOG2
    else:
        log2_bound = _log(bound) / _LOG2
    if log2_bound <= 0:
        raise OutcomeError(f"Cover precision {epsilon} is too small")
    target = -math.log2(log2_bound)
    k = round(target)
    if abs(target - k) > _FLOAT_SLACK:
        return math.ceil(target)
    return k if _base_fits(bound, k) else k + 1


def _cell_index(value: Fraction, level: int) -> int:
    """Index c with g^c <= value < g^(c+1) for the grid base g = 2^(2^-level)."""
    if level <= 0:
        return _floor_log2(value) >> -level
    # Float estimate, exact power test only near a cell boundary
    log_p, log_q = math.log(value.numerator), math.log(value.denominator)
    scaled = 2 ** level * (log_p - log_q) / _LOG2
    c = math.floor(scaled)
    if abs(scaled - round(scaled)) > _FLOAT_SLACK * 2 ** level * (1 + abs(log_p) + abs(log_q)):
        return c
    while not _reaches(value, level, c):
        c -= 1
    while _reaches(value, level, c + 1):
        c += 1
    return c


def _cell(vector: OutcomeVector, level: int) -> Tuple[int, ...]:
    return tuple(_cell_index(v, level) for v in vector)


def _prepare(S) -> OutcomeSet:
    S = S if isinstance(S, OutcomeSet) else OutcomeSet.from_vectors(S)
    if S.is_empty():
        raise OutcomeError("Cannot cover an empty outcome set")
    for y in S:
        require_positive(y, "Covered outcome")
    return S


def build_cover(S, spec: CoverSpec) -> OutcomeSet:
    """Build and verify the cover of S described by ``spec``.

    Raises:
        OutcomeError: If S is empty
        PositivityError: If a point of S has a zero component
        CoverError: If the built cover fails verification
    """
    S = _prepare(S)
    level = spec.level
    if spec.direction is CoverDirection.LOWER:
        groups: Dict[Tuple[int, ...], List[OutcomeVector]] = {}
        for y in worst_subset(S):
            groups.setdefault(_cell(y, level), []).append(y)
        cover = OutcomeSet.from_vectors(
            tuple(min(column) for column in zip(*members)) for members in groups.values()
        )
    else:
        cells: Dict[Tuple[int, ...], OutcomeVector] = {}
        for z in S:
            cells.setdefault(_cell(z, level), z)
        cover = OutcomeSet.from_vectors(cells.values())

    logger.debug(
        f"{spec.direction.value.capitalize()} cover: {len(S)} points -> {len(cover)} (eps={spec.epsilon})"
    )
    if not verify_cover(S, cover, spec.epsilon, spec.direction):
        raise CoverError(f"{spec.direction.value.capitalize()} {spec.epsilon}-cover failed verification")
    return cover


def lower_cover(S, eps: RationalLike) -> OutcomeSet:
    """A lower ε-cover of S: one meet of worst points per occupied grid cell.

    The worst points of S are grouped by cell and each group is replaced by
    its componentwise minimum. A cell holding a single worst point keeps that
    point, so the cover is a subset of S whenever no cell holds two.
    """
    return build_cover(S, CoverSpec(epsilon=eps, direction=CoverDirection.LOWER))


def upper_cover(S, eps: RationalLike) -> OutcomeSet:
    """An upper ε-cover of S: one point of S per occupied grid cell.

    The lexicographically smallest member represents each cell.
    """
    return build_cover(S, CoverSpec(epsilon=eps, direction=CoverDirection.UPPER))


def verify_cover(original, cover, eps: RationalLike, direction: CoverDirection) -> bool:
    """Exhaustively check the two cover conditions for ``direction``."""
    original = list(original)
    cover = list(cover)
    factor = 1 + parse_rational(eps)
    if not original or not cover:
        return not original and not cover
    if len(original[0]) != len(cover[0]):
        return False

    def grow(v):
        return tuple(factor * c for c in v)

    if direction is CoverDirection.LOWER:
        below = all(any(weak_dominates(y, c) for c in cover) for y in original)
        close = all(any(weak_dominates(grow(c), y) for y in original) for c in cover)
    else:
        below = all(any(weak_dominates(c, z) for z in original) for c in cover)
        close = all(any(weak_dominates(grow(z), c) for c in cover) for z in original)
    return below and close


def approx_mocr(
    E,
    F,
    eps1: RationalLike,
    eps2: RationalLike,
    exact_E=None,
    exact_F=None,
    threads: Optional[int] = 1,
) -> Tuple[RatioSet, ApproximationCertificate]:
    """MO-CR of approximate sets E and F, with its guarantee.

    Runs the exact algorithm on (WST[E], EFF[F]). When the exact sets are
    given, E and F are first verified as lower and upper covers of them.

    Args:
        E: Lower cover of the equilibrium outcomes
        F: Upper cover of the efficient outcomes (strictly positive)
        eps1: Precision of E (>= 0)
        eps2: Precision of F (>= 0)
        exact_E: Exact equilibrium outcomes, for verification
        exact_F: Exact efficient outcomes, for verification
        threads: Worker threads for the MO-CR recursion

    Returns:
        (RatioSet, ApproximationCertificate)

    Raises:
        CoverError: If a supplied cover fails verification
    """
    eps1, eps2 = parse_rational(eps1), parse_rational(eps2)
    if eps1 < 0 or eps2 < 0:
        raise OutcomeError("Cover precisions must be >= 0")
    E = E if isinstance(E, OutcomeSet) else OutcomeSet.from_vectors(E)
    F = F if isinstance(F, OutcomeSet) else OutcomeSet.from_vectors(F)

    if exact_E is not None:
        if not verify_cover(exact_E, E, eps1, CoverDirection.LOWER):
            raise CoverError(f"E is not a lower {eps1}-cover of the equilibrium outcomes")
    if exact_F is not None:
        if not verify_cover(exact_F, F, eps2, CoverDirection.UPPER):
            raise CoverError(f"F is not an upper {eps2}-cover of the efficient outcomes")
    verified = exact_E is not None and exact_F is not None

    result = mo_cr(worst_subset(E), efficient_subset(F), threads=threads)
    certificate = ApproximationCertificate(
        eps1=eps1,
        eps2=eps2,
        factor=(1 + eps1) * (1 + eps2),
        equilibria_cover_size=len(E),
        efficient_cover_size=len(F),
        verified=verified,
    )
    logger.info(
        f"Approximate MO-CR: |E|={len(E)}, |F|={len(F)}, {len(result)} ratios, "
        f"factor {certificate.factor}"
    )
    return result, certificate


def approximate_mocr(exact_E, exact_F, eps1: RationalLike, eps2: RationalLike, threads: Optional[int] = 1) -> Tuple[RatioSet, ApproximationCertificate]:
    """Build both covers of the exact sets and run ``approx_mocr`` on them.

    ``exact_F`` is reduced to its efficient subset before it is covered.
    """
    exact_F = efficient_subset(exact_F)
    E = lower_cover(exact_E, eps1)
    F = upper_cover(exact_F, eps2)
    return approx_mocr(E, F, eps1, eps2, exact_E=exact_E, exact_F=exact_F, threads=threads)


def covered_within(exact: RatioSet, approximate: RatioSet, factor: Fraction) -> List[OutcomeVector]:
    """Exact ratios not covered by factor ⋆ ρ' for any approximate ρ' (empty when sound)."""
    grown = [scale_vector((factor,) * len(rho), rho) for rho in approximate]
    return [rho for rho in exact if not any(weak_dominates(g, rho) for g in grown)]
