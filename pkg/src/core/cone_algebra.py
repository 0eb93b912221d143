"""Exact set algebra of cone-unions in the nonnegative orthant.

The cone C(x) is every point weakly dominated by x; a cone-union C(X) is
stored by its summits EFF[X], which describe the same region. Unions and
intersections are closed on this representation:

    C(X1) ∪ C(X2) = C(X1 ∪ X2)
    C(X1) ∩ C(X2) = C({x1 ∧ x2 | x1 ∈ X1, x2 ∈ X2})
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple, Union

try:
    from ..models.outcome import (
        OutcomeError,
        OutcomeSet,
        OutcomeVector,
        PositivityError,
        check_dimension,
        format_vector,
    )
except ImportError:
    from models.outcome import (
        OutcomeError,
        OutcomeSet,
        OutcomeVector,
        PositivityError,
        check_dimension,
        format_vector,
    )

from .pareto import efficient_indices, weak_dominates


@dataclass(frozen=True)
class ConeUnion:
    """A union of cones, held by its Pareto-efficient summits in lexicographic order.

    Build instances with ``canonicalize``; an empty summit tuple is the empty region.
    """

    summits: Tuple[OutcomeVector, ...] = ()

    @property
    def dimension(self):
        return len(self.summits[0]) if self.summits else None

    def is_empty(self) -> bool:
        return not self.summits

    def __len__(self) -> int:
        return len(self.summits)

    def __iter__(self) -> Iterator[OutcomeVector]:
        return iter(self.summits)

    def __contains__(self, x) -> bool:
        return contains(self, x)

    def as_outcome_set(self) -> OutcomeSet:
        return OutcomeSet(vectors=self.summits)


def canonicalize(X: Union[OutcomeSet, Iterable[Sequence]]) -> ConeUnion:
    """Cone-union of X described by EFF[X]."""
    vectors = X.vectors if isinstance(X, OutcomeSet) else OutcomeSet.from_vectors(X).vectors
    keep = efficient_indices(vectors)
    return ConeUnion(summits=tuple(vectors[i] for i in keep))


def meet(x: Sequence, y: Sequence) -> OutcomeVector:
    """Componentwise minimum x ∧ y."""
    check_dimension(x, y)
    return tuple(min(a, b) for a, b in zip(x, y))


def ratio(y: Sequence, z: Sequence) -> OutcomeVector:
    """Componentwise quotient y / z.

    Raises:
        PositivityError: If a component of z is not strictly positive
    """
    check_dimension(y, z)
    if any(c <= 0 for c in z):
        raise PositivityError(f"Cannot divide by {format_vector(z)}: components must be > 0")
    return tuple(a / b for a, b in zip(y, z))


def scale_vector(r: Sequence, y: Sequence) -> OutcomeVector:
    """Componentwise product r ⋆ y."""
    check_dimension(r, y)
    return tuple(a * b for a, b in zip(r, y))


def scale(r: Sequence, X: Union[OutcomeSet, Iterable[Sequence]]) -> OutcomeSet:
    """r ⋆ X, the componentwise product applied to every element."""
    return OutcomeSet.from_vectors(scale_vector(r, x) for x in X)


def union(A: ConeUnion, B: ConeUnion) -> ConeUnion:
    _check_same_space(A, B)
    return canonicalize(A.summits + B.summits)


def intersect(A: ConeUnion, B: ConeUnion) -> ConeUnion:
    _check_same_space(A, B)
    return canonicalize(meet(a, b) for a in A.summits for b in B.summits)


def contains(A: ConeUnion, x: Sequence) -> bool:
    """True iff some summit of A weakly dominates x."""
    return any(weak_dominates(s, x) for s in A.summits)


def covers(A: ConeUnion, B: ConeUnion) -> bool:
    """A ⊵ B: the region of B lies inside the region of A."""
    _check_same_space(A, B)
    return all(contains(A, b) for b in B.summits)


def _check_same_space(A: ConeUnion, B: ConeUnion):
    if A.dimension is not None and B.dimension is not None and A.dimension != B.dimension:
        raise OutcomeError(f"Cone-unions live in dimensions {A.dimension} and {B.dimension}")
