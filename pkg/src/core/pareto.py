"""Pareto dominance and efficient/worst subsets of outcome sets.

All subset computations first replace each component by its rank among the
values present on that objective. Ranks preserve the componentwise order
exactly, so the comparisons run on small ints instead of Fractions.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

try:
    from ..models.outcome import OutcomeSet, OutcomeVector, check_dimension
except ImportError:
    from models.outcome import OutcomeSet, OutcomeVector, check_dimension

logger = logging.getLogger("MOCRSolver")

METHODS = ("auto", "pairwise", "filter", "sweep")

Vectors = Union[OutcomeSet, Iterable[OutcomeVector]]


@dataclass(frozen=True)
class DominanceVerdict:
    """Weak (y ≿ x) and strict (y ≻ x) dominance of y over x."""
    weak: bool
    strict: bool


def compare(y: Sequence, x: Sequence) -> DominanceVerdict:
    """Dominance verdict of ``y`` over ``x``.

    Raises:
        OutcomeError: If the dimensions differ
    """
    check_dimension(y, x)
    weak = all(a >= b for a, b in zip(y, x))
    return DominanceVerdict(weak=weak, strict=weak and any(a > b for a, b in zip(y, x)))


def weak_dominates(y: Sequence, x: Sequence) -> bool:
    """True iff every component of y is >= the matching component of x."""
    check_dimension(y, x)
    return all(a >= b for a, b in zip(y, x))


def dominates(y: Sequence, x: Sequence) -> bool:
    """True iff y weakly dominates x and is strictly better somewhere."""
    return compare(y, x).strict


def rank_encode(vectors: Sequence[Sequence], reverse: bool = False) -> List[Tuple[int, ...]]:
    """Replace each component by its rank among that objective's values.

    Args:
        vectors: Vectors of equal dimension
        reverse: Negate ranks, which flips the order on every objective

    Returns:
        Int tuples ordered componentwise exactly like the inputs
    """
    if not vectors:
        return []
    d = len(vectors[0])
    sign = -1 if reverse else 1
    columns = []
    for k in range(d):
        values = sorted({v[k] for v in vectors})
        ranks = {value: sign * r for r, value in enumerate(values)}
        columns.append([ranks[v[k]] for v in vectors])
    return list(zip(*columns))


def _strictly_above(a: Tuple[int, ...], b: Tuple[int, ...]) -> bool:
    return a != b and all(x >= y for x, y in zip(a, b))


def _pairwise(codes: List[Tuple[int, ...]]) -> List[int]:
    return [
        i for i, x in enumerate(codes)
        if not any(_strictly_above(y, x) for y in codes)
    ]


def _filter(codes: List[Tuple[int, ...]]) -> List[int]:
    # A dominator is lexicographically larger, so a descending scan only has
    # to compare each point against the points already kept.
    kept: List[int] = []
    for i in sorted(range(len(codes)), key=codes.__getitem__, reverse=True):
        x = codes[i]
        if not any(_strictly_above(codes[j], x) for j in kept):
            kept.append(i)
    return sorted(kept)


def _sweep(codes: List[Tuple[int, ...]]) -> List[int]:
    kept: List[int] = []
    best = None
    for i in sorted(range(len(codes)), key=lambda i: (-codes[i][0], -codes[i][1])):
        if best is None or codes[i][1] > best:
            kept.append(i)
            best = codes[i][1]
    return sorted(kept)


def efficient_indices(vectors: Sequence[Sequence], method: str = "auto", reverse: bool = False) -> List[int]:
    """Indices of the Pareto-efficient vectors of a duplicate-free sequence.

    Args:
        vectors: Distinct vectors of one dimension
        method: "pairwise" (quadratic reference), "filter" (sorted archive),
            "sweep" (d=2 only) or "auto"
        reverse: Compute the worst vectors instead

    Returns:
        Sorted indices into ``vectors``
    """
    if method not in METHODS:
        raise ValueError(f"Unknown efficiency method '{method}' (choose from {METHODS})")
    if not vectors:
        return []
    d = len(vectors[0])
    if method == "sweep" and d != 2:
        raise ValueError(f"The sweep method needs d=2, got d={d}")
    codes = rank_encode(vectors, reverse=reverse)
    if method == "auto":
        method = "sweep" if d == 2 else "filter"
    if method == "sweep":
        return _sweep(codes)
    if method == "filter":
        return _filter(codes)
    return _pairwise(codes)


def _as_set(Y: Vectors) -> OutcomeSet:
    return Y if isinstance(Y, OutcomeSet) else OutcomeSet.from_vectors(Y)


def efficient_subset(Y: Vectors, method: str = "auto") -> OutcomeSet:
    """EFF[Y]: the vectors of Y that no other vector of Y Pareto-dominates.

    Back-maps of the kept vectors are preserved. An empty input gives an
    empty output.
    """
    Y = _as_set(Y)
    keep = efficient_indices(Y.vectors, method=method)
    return Y.restrict(Y.vectors[i] for i in keep)


def worst_subset(Y: Vectors, method: str = "auto") -> OutcomeSet:
    """WST[Y]: the vectors of Y that dominate no other vector of Y."""
    Y = _as_set(Y)
    keep = efficient_indices(Y.vectors, method=method, reverse=True)
    return Y.restrict(Y.vectors[i] for i in keep)
