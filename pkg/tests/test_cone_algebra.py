from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.cone_algebra import (
    ConeUnion,
    canonicalize,
    contains,
    covers,
    intersect,
    meet,
    ratio,
    scale,
    scale_vector,
    union,
)
from models.outcome import OutcomeError, PositivityError
from strategies import outcome_sets, vec, vectors


def cone_triples(d_max=3):
    return st.integers(min_value=1, max_value=d_max).flatmap(
        lambda d: st.tuples(*[outcome_sets(d=d, max_size=5).map(canonicalize)] * 3)
    )


def test_canonicalize_keeps_summits():
    cone = canonicalize([(1, 1), (2, 2), (3, 0)])
    assert cone.summits == (vec(2, 2), vec(3, 0))
    assert vec(1, 2) in cone
    assert vec(3, 1) not in cone
    assert canonicalize([]).is_empty()


def test_meet_and_ratio():
    assert meet(vec(3, 1), vec(1, 2)) == vec(1, 1)
    assert ratio(vec(30, 53), vec(46, 61)) == vec("15/23", "53/61")
    with pytest.raises(PositivityError):
        ratio(vec(1, 1), vec(1, 0))
    with pytest.raises(OutcomeError):
        meet(vec(1), vec(1, 2))


def test_scale():
    assert scale_vector(vec(2, "1/2"), vec(3, 4)) == vec(6, 2)
    assert scale(vec(2, 3), [(1, 1), (0, 2)]).vectors == (vec(0, 6), vec(2, 3))


def test_intersection_of_two_cones():
    A = canonicalize([(3, 1)])
    B = canonicalize([(1, 3)])
    assert intersect(A, B).summits == (vec(1, 1),)
    assert union(A, B).summits == (vec(1, 3), vec(3, 1))


def test_mixed_dimensions_rejected():
    with pytest.raises(OutcomeError):
        union(canonicalize([(1, 1)]), canonicalize([(1, 1, 1)]))


def test_empty_region_is_neutral_for_union():
    A = canonicalize([(1, 2)])
    assert union(A, ConeUnion()) == A
    assert intersect(A, ConeUnion()).is_empty()


@given(cone_triples())
@settings(max_examples=100, deadline=None)
def test_lattice_laws(triple):
    A, B, C = triple
    assert union(A, B) == union(B, A)
    assert intersect(A, B) == intersect(B, A)
    assert union(A, A) == A
    assert intersect(A, A) == A
    assert union(union(A, B), C) == union(A, union(B, C))
    assert intersect(intersect(A, B), C) == intersect(A, intersect(B, C))
    assert union(A, intersect(A, B)) == A
    assert intersect(A, union(A, B)) == A
    assert intersect(A, union(B, C)) == union(intersect(A, B), intersect(A, C))


@given(cone_triples(), st.data())
@settings(max_examples=100, deadline=None)
def test_membership_matches_set_operations(triple, data):
    A, B, _ = triple
    x = data.draw(vectors(A.dimension))
    assert contains(union(A, B), x) == (contains(A, x) or contains(B, x))
    assert contains(intersect(A, B), x) == (contains(A, x) and contains(B, x))


@given(cone_triples())
@settings(max_examples=60, deadline=None)
def test_covers_relation(triple):
    A, B, _ = triple
    assert covers(A, A)
    assert covers(A, intersect(A, B))
    assert covers(union(A, B), B)
    if covers(A, B) and covers(B, A):
        assert A == B


@given(outcome_sets(max_size=5), st.data())
@settings(max_examples=60, deadline=None)
def test_positive_scaling_commutes_with_canonical_form(X, data):
    r = data.draw(vectors(X.dimension, positive=True))
    assert canonicalize(scale(r, X)) == canonicalize(scale(r, canonicalize(X).summits))


def test_summits_are_exact_fractions():
    cone = canonicalize([("1/3", "2/3")])
    assert all(isinstance(c, Fraction) for c in cone.summits[0])
