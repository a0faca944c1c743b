"""Evidence combination: Dempster's rule and the entropy-bound method.

The interval-valued combination works body by body: for each input structure
the entropy-maximizing and entropy-minimizing BPAs are extracted (under a
chosen separable measure), the maximizers are folded together with
Dempster's rule, the minimizers likewise, and each focal set receives the
interval spanned by its two folded masses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    Bpa,
    FocalSet,
    IntervalBeliefStructure,
    IntervalMassResult,
    IvbelError,
    TotalConflictError,
    is_normalized,
    normalize,
)
from .entropy import EntropyMeasure, measure
from .optimize import entropy_bounds

__all__ = [
    "COMBINABLE_TOL",
    "DempsterDiagnostics",
    "CombinationReport",
    "dempster_conflict",
    "dempster_combine",
    "dempster_combine_n",
    "proposed_combine",
    "proposed_combine_report",
]

# Bodies are combinable iff the conflict mass K stays below 1 by this margin.
COMBINABLE_TOL = 1e-12


@dataclass(frozen=True)
class DempsterDiagnostics:
    """Conflict between combined bodies: the mass K assigned to the empty
    set before renormalization.  For folds of several bodies the reported
    value is cumulative, ``1 - prod(1 - K_step)``."""

    conflict_mass: float
    combinable: bool


@dataclass(frozen=True)
class CombinationReport:
    """A combination result together with its audit trail."""

    method: str
    result: IntervalMassResult
    diagnostics: tuple[DempsterDiagnostics, ...] = ()
    intermediate_bpas: tuple[tuple[str, Bpa], ...] = ()
    intermediate_results: tuple[tuple[str, IntervalMassResult], ...] = ()
    normalization_applied: bool = False
    notes: tuple[str, ...] = ()


def _check_same_frame(bodies: Sequence[Bpa] | Sequence[IntervalBeliefStructure]) -> None:
    frames = {b.frame for b in bodies}
    if len(frames) > 1:
        raise IvbelError("bodies must share one frame")


def _raw_products(b1: Bpa, b2: Bpa) -> tuple[dict[int, float], float]:
    """Unnormalized intersection products and the conflict mass."""
    raw: dict[int, float] = {}
    conflict = 0.0
    for f1, m1 in b1.entries:
        for f2, m2 in b2.entries:
            inter = f1.bits & f2.bits
            if inter == 0:
                conflict += m1 * m2
            else:
                raw[inter] = raw.get(inter, 0.0) + m1 * m2
    return raw, conflict


def dempster_conflict(b1: Bpa, b2: Bpa) -> DempsterDiagnostics:
    """Conflict diagnostics without performing the combination."""
    _check_same_frame((b1, b2))
    _, conflict = _raw_products(b1, b2)
    return DempsterDiagnostics(conflict, conflict < 1.0 - COMBINABLE_TOL)


def dempster_combine(b1: Bpa, b2: Bpa) -> tuple[Bpa, DempsterDiagnostics]:
    """Dempster's rule for two BPAs on one frame.

    Raises :class:`TotalConflictError` when the conflict mass reaches one.
    """
    _check_same_frame((b1, b2))
    raw, conflict = _raw_products(b1, b2)
    if conflict >= 1.0 - COMBINABLE_TOL:
        raise TotalConflictError(f"not combinable: total conflict (K={conflict:.12g})")
    scale = 1.0 / (1.0 - conflict)
    combined = Bpa(
        b1.frame, tuple((FocalSet(bits), mass * scale) for bits, mass in raw.items())
    )
    return combined, DempsterDiagnostics(conflict, True)


def dempster_combine_n(bodies: Sequence[Bpa]) -> tuple[Bpa, DempsterDiagnostics]:
    """Left fold of Dempster's rule over one or more BPAs.

    The rule is associative and commutative, so the fold order does not
    affect the result.
    """
    if not bodies:
        raise IvbelError("no evidence: need at least one body")
    _check_same_frame(bodies)
    acc = bodies[0]
    surviving = 1.0
    for b in bodies[1:]:
        acc, diag = dempster_combine(acc, b)
        surviving *= 1.0 - diag.conflict_mass
    return acc, DempsterDiagnostics(1.0 - surviving, True)


def proposed_combine(
    bodies: Sequence[IntervalBeliefStructure],
    m: str | EntropyMeasure = "pal",
) -> IntervalMassResult:
    """Combine interval-valued bodies through their entropy-bound BPAs."""
    return proposed_combine_report(bodies, m).result


def proposed_combine_report(
    bodies: Sequence[IntervalBeliefStructure],
    m: str | EntropyMeasure = "pal",
) -> CombinationReport:
    """Like :func:`proposed_combine`, returning the full audit trail:
    per-body extremal BPAs, fold conflicts, and normalization actions."""
    if len(bodies) < 2:
        raise IvbelError("no evidence: need at least two bodies to combine")
    _check_same_frame(bodies)
    meas = measure(m)
    notes: list[str] = []
    intermediates: list[tuple[str, Bpa]] = []
    maxes: list[Bpa] = []
    mins: list[Bpa] = []
    for idx, body in enumerate(bodies, start=1):
        if not is_normalized(body):
            raise IvbelError(
                f"body {idx} is not normalized; normalize inputs before combining"
            )
        sol = entropy_bounds(body, meas)
        maxes.append(sol.m_max)
        mins.append(sol.m_min)
        intermediates.append((f"body{idx}.max", sol.m_max))
        intermediates.append((f"body{idx}.min", sol.m_min))
        if sol.min_tie_count > 1:
            notes.append(
                f"body {idx}: {sol.min_tie_count} vertices tie for the entropy "
                "minimum; kept the first in canonical order"
            )

    folded_max, diag_max = dempster_combine_n(maxes)
    folded_min, diag_min = dempster_combine_n(mins)
    intermediates.append(("fold.max", folded_max))
    intermediates.append(("fold.min", folded_min))

    support: set[int] = set()
    for body in bodies:
        support.update(fs.bits for fs in body.focal_sets)
    support.update(fs.bits for fs in folded_max.focal_sets)
    support.update(fs.bits for fs in folded_min.focal_sets)

    frame = bodies[0].frame
    entries = []
    for bits in sorted(support):
        fs = FocalSet(bits)
        v1 = folded_max.mass(fs)
        v2 = folded_min.mass(fs)
        entries.append((fs, min(v1, v2), max(v1, v2)))

    result_ibs = IntervalBeliefStructure(frame, tuple(entries))
    renormalized = False
    if not is_normalized(result_ibs):
        result_ibs = normalize(result_ibs)
        renormalized = True
        notes.append("result bounds were not tight; normalized after combination")

    result = IntervalMassResult(
        frame,
        result_ibs.entries,
        includes_empty=None,
        normalized=is_normalized(result_ibs),
    )
    return CombinationReport(
        method=f"proposed[{meas.id}]",
        result=result,
        diagnostics=(diag_max, diag_min),
        intermediate_bpas=tuple(intermediates),
        normalization_applied=renormalized,
        notes=tuple(notes),
    )
