"""Rendering of analysis results as JSON or text, and CSV plot points.

Every vector is written twice: exact ("p/q" strings) and as a rounded
decimal. Key order is fixed, so identical inputs give identical bytes once
timings are left out.
"""

import csv
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

try:
    from ..models.outcome import OutcomeSet, OutcomeVector, format_rational, render_decimal
    from ..models.report import EfficiencyReport
except ImportError:
    from models.outcome import OutcomeSet, OutcomeVector, format_rational, render_decimal
    from models.report import EfficiencyReport

from .approx import ApproximationCertificate
from .axioms import AxiomReport
from .cone_algebra import meet
from .equilibria import EquilibriumSet
from .mocr import RatioCheck, RatioSet
from .pareto import efficient_indices

logger = logging.getLogger("MOCRSolver")

FORMATS = ("json", "text")

PLOT_TAGS = ("A", "E", "F", "WST", "MOCR")


def vector_entry(vector: OutcomeVector, precision: int) -> Dict[str, List[str]]:
    return {
        "exact": [format_rational(c) for c in vector],
        "decimal": [render_decimal(c, precision) for c in vector],
    }


def _set_entries(outcomes: OutcomeSet, precision: int, labels=None) -> List[dict]:
    entries = []
    for vector in outcomes:
        entry = vector_entry(vector, precision)
        if labels is not None and outcomes.witnesses(vector):
            entry["profiles"] = [labels(p) for p in outcomes.witnesses(vector)]
        entries.append(entry)
    return entries


def clipped_ratios(ratio_set: RatioSet) -> List[Tuple[OutcomeVector, OutcomeVector]]:
    """Efficient ratios met with (1,...,1), each paired with a source ratio.

    The source's witnesses stay valid for its clipped ratio.
    """
    ratios = ratio_set.ratios.vectors
    if not ratios:
        return []
    ones = (Fraction(1),) * len(ratios[0])
    sources: Dict[OutcomeVector, OutcomeVector] = {}
    for rho in ratios:
        sources.setdefault(meet(rho, ones), rho)
    clipped = sorted(sources)
    return [(clipped[i], sources[clipped[i]]) for i in sorted(efficient_indices(clipped))]


def _ratio_pairs(ratio_set: RatioSet, clip: bool) -> List[Tuple[OutcomeVector, OutcomeVector]]:
    if clip:
        return clipped_ratios(ratio_set)
    return [(rho, rho) for rho in ratio_set.ratios]


def ratio_set_document(
    ratio_set: RatioSet,
    precision: int = 6,
    clip: bool = False,
    equilibria: Optional[OutcomeSet] = None,
    efficient: Optional[OutcomeSet] = None,
    labels=None,
) -> dict:
    """MO-CR section: each ratio with its (equilibrium, efficient) witness pairs.

    ``equilibria`` and ``efficient`` carry the back-maps used to name witness
    profiles when ``labels`` is given.
    """
    ratios = []
    for shown, source in _ratio_pairs(ratio_set, clip):
        witnesses = []
        for y, z in sorted(ratio_set.witnesses[source].items()):
            witness = {
                "equilibrium": vector_entry(y, precision),
                "efficient": vector_entry(z, precision),
            }
            if labels is not None:
                if equilibria is not None:
                    witness["equilibrium_profiles"] = [labels(p) for p in equilibria.witnesses(y)]
                if efficient is not None:
                    witness["efficient_profiles"] = [labels(p) for p in efficient.witnesses(z)]
            witnesses.append(witness)
        entry = vector_entry(shown, precision)
        entry["witnesses"] = witnesses
        ratios.append(entry)
    return {
        "status": "defined",
        "clipped": clip,
        "q": ratio_set.q,
        "m": ratio_set.m,
        "size_bound": ratio_set.size_bound,
        "ratios": ratios,
    }


def report_document(
    report: EfficiencyReport,
    precision: int = 6,
    include_timings: bool = True,
    clip: bool = False,
) -> dict:
    """Full analysis as an ordered dictionary."""
    labels = report.profile_labels
    doc = {
        "game": report.game.name,
        "agents": list(report.game.agents),
        "objectives": list(report.space.names),
        "efficiency_objectives": list(report.space.efficiency_names),
        "sizes": report.sizes,
        "pareto_nash": [labels(p) for p in report.profiles],
        "outcomes": _set_entries(report.outcomes, precision),
        "equilibria": _set_entries(report.equilibria, precision, labels),
        "worst_equilibria": _set_entries(report.worst, precision, labels),
        "efficient": _set_entries(report.efficient, precision, labels),
    }
    if report.mocr is None:
        doc["mocr"] = {"status": "undefined", "reason": "the game has no Pareto-Nash equilibrium"}
    else:
        doc["mocr"] = ratio_set_document(
            report.mocr, precision, clip,
            equilibria=report.worst, efficient=report.efficient, labels=labels,
        )
    if include_timings:
        doc["timings"] = {phase: round(seconds, 6) for phase, seconds in report.timings.items()}
    return doc


def equilibria_document(equilibria: EquilibriumSet, labels, precision: int = 6) -> dict:
    return {
        "pareto_nash": [labels(p) for p in equilibria.profiles],
        "equilibria": _set_entries(equilibria.outcomes, precision, labels),
        "worst_equilibria": _set_entries(equilibria.worst, precision, labels),
    }


def frontier_document(outcomes: OutcomeSet, efficient: OutcomeSet, labels, precision: int = 6) -> dict:
    return {
        "sizes": {"outcomes": len(outcomes), "efficient": len(efficient)},
        "outcomes": _set_entries(outcomes, precision),
        "efficient": _set_entries(efficient, precision, labels),
    }


def check_document(rho: OutcomeVector, check: RatioCheck, precision: int = 6) -> dict:
    doc = {
        "ratio": vector_entry(rho, precision),
        "holds": check.holds,
        "witnesses": [
            {"equilibrium": vector_entry(y, precision), "efficient": vector_entry(z, precision)}
            for y, z in sorted(check.witnesses.items())
        ],
    }
    if check.violation is not None:
        doc["violation"] = vector_entry(check.violation, precision)
    return doc


def axioms_document(axioms: AxiomReport) -> dict:
    return {
        "all_hold": axioms.all_hold,
        "checks": [
            {"name": c.name, "holds": c.holds, "detail": c.detail}
            for c in axioms.checks
        ],
    }


def approximation_document(
    ratio_set: RatioSet,
    certificate: ApproximationCertificate,
    precision: int = 6,
    clip: bool = False,
) -> dict:
    return {
        "certificate": {
            "eps1": format_rational(certificate.eps1),
            "eps2": format_rational(certificate.eps2),
            "factor": format_rational(certificate.factor),
            "equilibria_cover_size": certificate.equilibria_cover_size,
            "efficient_cover_size": certificate.efficient_cover_size,
            "verified": certificate.verified,
        },
        "mocr": ratio_set_document(ratio_set, precision, clip),
    }


def _text_lines(value, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        if set(value) >= {"exact", "decimal"}:
            head = f"{pad}({','.join(value['exact'])})  ~ ({', '.join(value['decimal'])})"
            rest = {k: v for k, v in value.items() if k not in ("exact", "decimal")}
            return [head] + _text_lines(rest, indent + 1) if rest else [head]
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _is_flat(item):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar_text(item)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)) and not _is_flat(item):
                sub = _text_lines(item, indent + 1)
                lines.append(f"{pad}- {sub[0].lstrip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar_text(item)}")
        return lines
    return [f"{pad}{_scalar_text(value)}"]


def _is_flat(value) -> bool:
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) for v in value)
    return False


def _scalar_text(value) -> str:
    if isinstance(value, list):
        return ", ".join(_scalar_text(v) for v in value) if value else "(none)"
    if isinstance(value, dict):
        return "(none)"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def render(doc: dict, fmt: str = "json") -> str:
    """Serialize a document as JSON (indent 2) or indented text."""
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False)
    if fmt == "text":
        return "\n".join(_text_lines(doc))
    raise ValueError(f"Unknown report format '{fmt}' (choose from {list(FORMATS)})")


def emit_report(
    report: EfficiencyReport,
    fmt: str = "json",
    precision: int = 6,
    include_timings: bool = True,
    clip: bool = False,
) -> str:
    """Render a full analysis report.

    Args:
        report: Result of ``full_analysis``
        fmt: "json" or "text"
        precision: Decimal places of the rounded renderings
        include_timings: Include phase timings (omit for byte-stable output)
        clip: Show MO-CR ratios met with (1,...,1)

    Returns:
        The rendered report
    """
    return render(report_document(report, precision, include_timings, clip), fmt)


def plot_rows(report: EfficiencyReport, precision: int = 6, clip: bool = False) -> Iterable[List[str]]:
    sets = (
        ("A", report.outcomes.vectors),
        ("E", report.equilibria.vectors),
        ("F", report.efficient.vectors),
        ("WST", report.worst.vectors),
        ("MOCR", [shown for shown, _ in _ratio_pairs(report.mocr, clip)] if report.mocr else []),
    )
    for tag, vectors in sets:
        for vector in vectors:
            yield (
                [tag]
                + [format_rational(c) for c in vector]
                + [render_decimal(c, precision) for c in vector]
            )


def emit_plot_points(
    report: EfficiencyReport,
    path: Union[str, Path],
    precision: int = 6,
    clip: bool = False,
) -> int:
    """Write every set of the report as tagged CSV rows.

    Each row is ``tag, exact components..., decimal components...`` with tags
    A, E, F, WST and MOCR. There is no header.

    Returns:
        Number of rows written
    """
    path = Path(path)
    count = 0
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator="\n")
        for row in plot_rows(report, precision, clip):
            writer.writerow(row)
            count += 1
    logger.info(f"Wrote {count} plot points to {path}")
    return count
