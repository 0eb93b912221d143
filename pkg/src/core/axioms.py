"""Ratio-scale and monotonicity checks of the MO-CR on a given instance."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

try:
    from ..models.outcome import OutcomeError, OutcomeSet, require_positive
except ImportError:
    from models.outcome import OutcomeError, OutcomeSet, require_positive

from .cone_algebra import ConeUnion, covers, meet, scale, scale_vector
from .mocr import check_ratio, mo_cr
from .pareto import dominates, efficient_subset, worst_subset

logger = logging.getLogger("MOCRSolver")


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    holds: bool
    detail: str = ""


@dataclass
class AxiomReport:
    """Results of every check run by ``axiom_suite``."""

    checks: List[AxiomCheck] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> List[AxiomCheck]:
        return [c for c in self.checks if not c.holds]

    def get(self, name: str) -> AxiomCheck:
        return next(c for c in self.checks if c.name == name)

    def add(self, name: str, holds: bool, detail: str = ""):
        self.checks.append(AxiomCheck(name=name, holds=holds, detail=detail))
        if not holds:
            logger.warning(f"Axiom check '{name}' failed: {detail}")


def _ratios(E: OutcomeSet, F: OutcomeSet) -> OutcomeSet:
    return mo_cr(worst_subset(E), F).ratios


def _capped(X: OutcomeSet, shrink: Sequence[Fraction]) -> OutcomeSet:
    """Pointwise-dominated copy of X: every point is met with shrink ⋆ max(X)."""
    top = tuple(max(x[k] for x in X) for k in range(X.dimension))
    cap = scale_vector(shrink, top)
    return OutcomeSet.from_vectors(meet(x, cap) for x in X)


def axiom_suite(E, F, r: Sequence, shrink: Optional[Sequence] = None) -> AxiomReport:
    """Check the ratio-scale properties and monotonicity of MO-CR[E, F].

    Checks, by name:
        nonnegativity        every ratio lies in the nonnegative orthant
        zero-equilibrium     MO-CR[{0}, F] = {0}
        scale-equilibria     MO-CR[r⋆E, F] = r ⋆ MO-CR[E, F]
        scale-efficient      MO-CR[E, r⋆F] = MO-CR[E, F] / r
        efficiency-identity  E ⊆ F  ⇔  (1,…,1) ∈ MO-CR[E, F]
        worst-case-guarantee every ratio holds for every y in E, not only the worst
        monotone-equilibria  E ⊵ E' ⇒ MO-CR[E, F] ⊵ MO-CR[E', F]
        monotone-efficient   F ⊵ F' ⇒ MO-CR[E, F'] ⊵ MO-CR[E, F]

    F is reduced to its efficient subset first. The reverse direction of
    efficiency-identity is only asserted when no y in E strictly dominates an
    element of F, which holds whenever E and F come from one outcome set.
    The perturbed E' and F' cap every point at ``shrink`` ⋆ (componentwise max),
    so each perturbed point is dominated by its own original.

    Args:
        E: Equilibrium outcomes
        F: Efficient outcomes, strictly positive
        r: Strictly positive scaling vector
        shrink: Cap factors in (0, 1] per objective (default 1/2 everywhere)

    Returns:
        AxiomReport

    Raises:
        OutcomeError: If E or F is empty
        PositivityError: If r or an element of F is not strictly positive
    """
    E = E if isinstance(E, OutcomeSet) else OutcomeSet.from_vectors(E)
    F = F if isinstance(F, OutcomeSet) else OutcomeSet.from_vectors(F)
    if E.is_empty() or F.is_empty():
        raise OutcomeError("Axiom checks need nonempty E and F")
    F = efficient_subset(F)
    r = tuple(Fraction(c) for c in r)
    require_positive(r, "Scaling vector")
    d = E.dimension
    ones = (Fraction(1),) * d
    shrink = tuple(Fraction(c) for c in shrink) if shrink is not None else (Fraction(1, 2),) * d

    report = AxiomReport()
    base = _ratios(E, F)

    report.add(
        "nonnegativity",
        all(c >= 0 for rho in base for c in rho),
    )

    zero = OutcomeSet.from_vectors([(0,) * d])
    zero_ratios = _ratios(zero, F)
    report.add(
        "zero-equilibrium",
        zero_ratios.vectors == ((Fraction(0),) * d,),
        f"got {len(zero_ratios)} ratios",
    )

    report.add(
        "scale-equilibria",
        _ratios(scale(r, E), F) == scale(r, base),
    )

    inverse = tuple(1 / c for c in r)
    report.add(
        "scale-efficient",
        _ratios(E, scale(r, F)) == scale(inverse, base),
    )

    subset = all(y in F for y in E)
    has_ones = ones in base
    consistent = not any(dominates(y, z) for y in E for z in F)
    if subset:
        holds = has_ones and check_ratio(ones, E, F).holds
    elif consistent:
        holds = not has_ones
    else:
        holds = True
    report.add(
        "efficiency-identity",
        holds,
        f"E⊆F={subset}, (1,…,1)∈MO-CR={has_ones}, consistent={consistent}",
    )

    unsound = [rho for rho in base if not check_ratio(rho, E, F).holds]
    report.add(
        "worst-case-guarantee",
        not unsound,
        f"{len(unsound)} ratios fail against the full equilibrium set",
    )

    weaker_E = _capped(E, shrink)
    report.add(
        "monotone-equilibria",
        covers(ConeUnion(base.vectors), ConeUnion(_ratios(weaker_E, F).vectors)),
    )

    weaker_F = _capped(F, shrink)
    report.add(
        "monotone-efficient",
        covers(ConeUnion(_ratios(E, weaker_F).vectors), ConeUnion(base.vectors)),
    )

    logger.info(f"Axiom suite: {len(report.checks) - len(report.failures())}/{len(report.checks)} checks hold")
    return report
