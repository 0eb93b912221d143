"""Outcome vectors and outcome sets in objective space.

Every payoff and derived vector is a tuple of exact ``Fraction`` components.
Dominance and efficiency tests are equality-sensitive, so floats never enter
the core; they only appear when reports are rendered.
"""

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

# A point of objective space and an action profile (one action index per agent)
OutcomeVector = Tuple[Fraction, ...]
ActionProfile = Tuple[int, ...]

RationalLike = Union[int, str, Fraction, Decimal]


class OutcomeError(Exception):
    """Raised for malformed vectors or mismatched dimensions."""
    pass


class PositivityError(OutcomeError):
    """Raised when a strictly positive vector is required but not given."""
    pass


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an exact rational.

    Args:
        value: int, Fraction, Decimal, or a string such as "3", "0.75" or "11/15"

    Returns:
        Exact Fraction

    Raises:
        OutcomeError: If the value is a float, a bool or cannot be parsed
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise OutcomeError(
            f"Inexact value {value!r}: use an integer or a string like '0.75' or '3/4'"
        )
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise OutcomeError(f"Cannot parse rational '{value}'")
    raise OutcomeError(f"Unsupported rational type {type(value).__name__}")


def make_vector(components: Iterable[RationalLike]) -> OutcomeVector:
    """Build an outcome vector from rational-like components.

    Raises:
        OutcomeError: If the vector is empty or a component does not parse
    """
    vector = tuple(parse_rational(c) for c in components)
    if not vector:
        raise OutcomeError("Outcome vectors need at least one component")
    return vector


def check_dimension(y: Sequence, x: Sequence):
    """Raise OutcomeError unless both vectors have the same dimension."""
    if len(y) != len(x):
        raise OutcomeError(f"Dimension mismatch: {len(y)} vs {len(x)}")


def is_nonnegative(y: OutcomeVector) -> bool:
    return all(c >= 0 for c in y)


def is_strictly_positive(y: OutcomeVector) -> bool:
    return all(c > 0 for c in y)


def require_positive(y: OutcomeVector, what: str = "vector"):
    """Raise PositivityError naming the vector if a component is not > 0."""
    if not is_strictly_positive(y):
        raise PositivityError(
            f"{what} {format_vector(y)} must be strictly positive on every objective"
        )


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "n" or "p/q"."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_vector(y: Sequence[Fraction]) -> str:
    return "(" + ",".join(format_rational(c) for c in y) + ")"


def render_decimal(value: Fraction, precision: int = 6) -> str:
    """Render a Fraction as a decimal rounded to ``precision`` places.

    Trailing zeros are stripped, so 3/4 renders as "0.75" and 11/15 as
    "0.733333" at precision 6.
    """
    if precision < 0:
        raise ValueError(f"Precision must be >= 0, got {precision}")
    scaled = round(value * 10 ** precision)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled))
    if precision == 0:
        return sign + digits
    digits = digits.rjust(precision + 1, "0")
    whole, frac = digits[:-precision], digits[-precision:].rstrip("0")
    return sign + whole + ("." + frac if frac else "")


@dataclass(frozen=True)
class OutcomeSet:
    """Deduplicated set of outcome vectors in canonical lexicographic order.

    ``profiles`` back-maps each vector to the action profiles generating it;
    sets built from plain vectors carry an empty back-map. Equality only looks
    at the vectors.
    """

    vectors: Tuple[OutcomeVector, ...] = ()
    profiles: Dict[OutcomeVector, Tuple[ActionProfile, ...]] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self):
        dims = {len(v) for v in self.vectors}
        if len(dims) > 1:
            raise OutcomeError(f"Outcome set mixes dimensions {sorted(dims)}")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[RationalLike]]) -> 'OutcomeSet':
        """Create a canonical set from any iterable of vectors."""
        unique = {v if _is_exact(v) else make_vector(v) for v in vectors}
        return cls(vectors=tuple(sorted(unique)))

    @classmethod
    def from_profiles(
        cls, pairs: Iterable[Tuple[ActionProfile, OutcomeVector]]
    ) -> 'OutcomeSet':
        """Create a set with back-maps from (profile, vector) pairs."""
        grouped: Dict[OutcomeVector, List[ActionProfile]] = {}
        for profile, vector in pairs:
            grouped.setdefault(vector, []).append(tuple(profile))
        ordered = tuple(sorted(grouped))
        back = {v: tuple(sorted(grouped[v])) for v in ordered}
        return cls(vectors=ordered, profiles=back)

    def restrict(self, keep: Iterable[OutcomeVector]) -> 'OutcomeSet':
        """Sub-set of the given vectors, keeping their back-maps."""
        kept = tuple(sorted(set(keep)))
        missing = [v for v in kept if v not in self]
        if missing:
            raise OutcomeError(f"{format_vector(missing[0])} is not in the outcome set")
        back = {v: self.profiles[v] for v in kept if v in self.profiles}
        return OutcomeSet(vectors=kept, profiles=back)

    def witnesses(self, vector: OutcomeVector) -> Tuple[ActionProfile, ...]:
        """Action profiles generating ``vector`` (empty if unknown)."""
        return self.profiles.get(vector, ())

    @property
    def dimension(self) -> Optional[int]:
        return len(self.vectors[0]) if self.vectors else None

    def is_empty(self) -> bool:
        return not self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[OutcomeVector]:
        return iter(self.vectors)

    def __contains__(self, vector) -> bool:
        return vector in self._members

    @property
    def _members(self) -> frozenset:
        cached = self.__dict__.get("_member_cache")
        if cached is None:
            cached = frozenset(self.vectors)
            object.__setattr__(self, "_member_cache", cached)
        return cached


def _is_exact(vector) -> bool:
    return isinstance(vector, tuple) and bool(vector) and all(
        isinstance(c, Fraction) for c in vector
    )
