"""Earlier interval-evidence combination rules, for comparison.

Four families are implemented:

* Lee–Zhu: interval arithmetic with a parametric t-norm/t-conorm pair; the
  output is generally not normalized and discards conflicting mass.
* Denoeux: exact bounds of the unnormalized intersection products over
  vertex pairs of the two feasible polytopes, followed by an interval
  normalization that divides out the empty-set mass.
* Wang: exact bounds of the normalized Dempster ratio over tuples of
  polytope vertices, one per body.
* Song: projects each body to an interval-valued pignistic distribution,
  reads it as intuitionistic assessments per singleton, combines those with
  a Dempster-style operator, and transforms back.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .core import (
    FocalSet,
    IntervalBeliefStructure,
    IntervalMassResult,
    IvbelError,
    NormalizationError,
    TotalConflictError,
    is_normalized,
    normalize,
)
from .polytope import enumerate_vertices

__all__ = [
    "LeeZhuParams",
    "leezhu_combine",
    "denoeux_combine",
    "denoeux_normalize",
    "wang_combine",
    "IfsElement",
    "ifs_combine",
    "interval_pignistic",
    "song_combine",
    "song_combine_detail",
    "SongStages",
]


def _check_same_frame(bodies: Sequence[IntervalBeliefStructure]) -> None:
    frames = {b.frame for b in bodies}
    if len(frames) > 1:
        raise IvbelError("bodies must share one frame")


# ---------------------------------------------------------------------------
# Lee-Zhu


@dataclass(frozen=True)
class LeeZhuParams:
    """Order ``w >= 1`` of the t-conorm/t-norm pair used by Lee-Zhu."""

    w: float = 2.0

    def __post_init__(self) -> None:
        if not self.w >= 1.0:
            raise IvbelError(f"Lee-Zhu order must satisfy w >= 1, got {self.w}")


def _pnorm2(x: float, y: float, w: float) -> float:
    """``(x**w + y**w)**(1/w)`` for x, y in [0, 1], stable for large w."""
    hi, lo = (x, y) if x >= y else (y, x)
    if hi <= 0.0:
        return 0.0
    ratio = lo / hi
    return hi * math.exp(math.log1p(ratio**w) / w)


def _lz_union(x: float, y: float, w: float) -> float:
    return min(1.0, _pnorm2(x, y, w))


def _lz_intersection(x: float, y: float, w: float) -> float:
    return 1.0 - min(1.0, _pnorm2(1.0 - x, 1.0 - y, w))


def leezhu_combine(
    ibs1: IntervalBeliefStructure,
    ibs2: IntervalBeliefStructure,
    params: LeeZhuParams = LeeZhuParams(),
) -> IntervalMassResult:
    """Lee-Zhu combination of two interval bodies.

    Each pair of focal sets contributes the soft product of its bound pair
    to the pair's intersection; contributions to one focal set accumulate
    through the t-conorm.  Pairs with empty intersection are discarded, so
    mass is lost under conflict and the output is generally not normalized.
    Inputs need not be normalized.
    """
    _check_same_frame((ibs1, ibs2))
    w = params.w
    lows: dict[int, float] = {}
    highs: dict[int, float] = {}
    for f1, lo1, hi1 in ibs1.entries:
        for f2, lo2, hi2 in ibs2.entries:
            inter = f1.bits & f2.bits
            if inter == 0:
                continue
            c_lo = _lz_intersection(lo1, lo2, w)
            c_hi = _lz_intersection(hi1, hi2, w)
            lows[inter] = _lz_union(lows.get(inter, 0.0), c_lo, w)
            highs[inter] = _lz_union(highs.get(inter, 0.0), c_hi, w)
    if not lows:
        raise TotalConflictError("not combinable: every focal-set pair conflicts")
    entries = tuple(
        (FocalSet(bits), min(lows[bits], highs[bits]), highs[bits])
        for bits in sorted(lows)
    )
    ibs = IntervalBeliefStructure(ibs1.frame, entries)
    return IntervalMassResult(
        ibs1.frame, entries, includes_empty=None, normalized=is_normalized(ibs)
    )


# ---------------------------------------------------------------------------
# Denoeux


def denoeux_combine(
    ibs1: IntervalBeliefStructure, ibs2: IntervalBeliefStructure
) -> IntervalMassResult:
    """Exact bounds of the unnormalized intersection products.

    For every target set the product sum is bilinear in the two mass
    vectors, so its extrema over the product of the two polytopes are
    attained at vertex pairs; all pairs are enumerated.  The empty set is a
    target like any other and its bounds are returned in
    ``includes_empty``.  Inputs must be normalized.
    """
    _check_same_frame((ibs1, ibs2))
    for idx, body in enumerate((ibs1, ibs2), start=1):
        if not is_normalized(body):
            raise IvbelError(f"body {idx} is not normalized")
    v1s = enumerate_vertices(ibs1)
    v2s = enumerate_vertices(ibs2)
    sets1 = [fs.bits for fs in ibs1.focal_sets]
    sets2 = [fs.bits for fs in ibs2.focal_sets]
    targets = sorted({b1 & b2 for b1 in sets1 for b2 in sets2})

    lows = {t: math.inf for t in targets}
    highs = {t: -math.inf for t in targets}
    for v1, v2 in itertools.product(v1s, v2s):
        sums = {t: 0.0 for t in targets}
        for b1, m1 in zip(sets1, v1):
            if m1 == 0.0:
                continue
            for b2, m2 in zip(sets2, v2):
                sums[b1 & b2] += m1 * m2
        for t, value in sums.items():
            if value < lows[t]:
                lows[t] = value
            if value > highs[t]:
                highs[t] = value

    empty = (lows.pop(0), highs.pop(0)) if 0 in lows else (0.0, 0.0)
    entries = tuple(
        (FocalSet(bits), lows[bits], highs[bits]) for bits in sorted(lows)
    )
    return IntervalMassResult(
        ibs1.frame, entries, includes_empty=empty, normalized=False
    )


def denoeux_normalize(raw: IntervalMassResult) -> IntervalMassResult:
    """Divide out the empty-set mass from raw interval bounds.

    For each non-empty target the normalized bounds are the extrema of
    ``m(A) / (1 - m(0))`` over assignments that respect the raw bounds and
    sum to one over all targets including the empty set:

        lo'(A) = lo(A) / (1 - max(e_lo, 1 - lo(A) - sum_{B != A} hi(B)))
        hi'(A) = hi(A) / (1 - min(e_hi, 1 - hi(A) - sum_{B != A} lo(B)))

    where ``[e_lo, e_hi]`` are the raw empty-set bounds.  With
    ``e == [0, 0]`` and point masses summing to one this is the identity.
    """
    e_lo, e_hi = raw.includes_empty if raw.includes_empty is not None else (0.0, 0.0)
    sum_lo = math.fsum(lo for _, lo, _ in raw.entries)
    sum_hi = math.fsum(hi for _, _, hi in raw.entries)
    entries = []
    for fs, lo, hi in raw.entries:
        rest_hi = sum_hi - hi
        rest_lo = sum_lo - lo
        denom_lo = 1.0 - max(e_lo, 1.0 - lo - rest_hi)
        denom_hi = 1.0 - min(e_hi, 1.0 - hi - rest_lo)
        if denom_lo <= 0.0 or denom_hi <= 0.0:
            raise NormalizationError(
                f"degenerate normalization for {raw.frame.format_set(fs)}"
            )
        new_lo = lo / denom_lo if lo > 0.0 else 0.0
        new_hi = hi / denom_hi
        entries.append((fs, min(new_lo, 1.0), min(new_hi, 1.0)))
    ibs = IntervalBeliefStructure(raw.frame, tuple(entries))
    return IntervalMassResult(
        raw.frame, tuple(entries), includes_empty=None, normalized=is_normalized(ibs)
    )


# ---------------------------------------------------------------------------
# Wang


def wang_combine(bodies: Sequence[IntervalBeliefStructure]) -> IntervalMassResult:
    """Exact bounds of the Dempster ratio over per-body polytope vertices.

    For every tuple of vertices (one per body) the bodies are combined with
    Dempster's rule; each target's combined mass is a ratio of multilinear
    forms, so its extrema over the product polytope are attained at vertex
    tuples.  Tuples in total conflict are skipped as infeasible; if every
    tuple conflicts totally the bodies are not combinable.  Inputs must be
    normalized.
    """
    if len(bodies) < 2:
        raise IvbelError("no evidence: need at least two bodies to combine")
    _check_same_frame(bodies)
    for idx, body in enumerate(bodies, start=1):
        if not is_normalized(body):
            raise IvbelError(f"body {idx} is not normalized")
    vertex_sets = [enumerate_vertices(b) for b in bodies]
    focal_bits = [[fs.bits for fs in b.focal_sets] for b in bodies]

    full = (1 << bodies[0].frame.size) - 1
    targets: set[int] = set()
    for combo in itertools.product(*focal_bits):
        inter = full
        for b in combo:
            inter &= b
        if inter:
            targets.add(inter)
    if not targets:
        raise TotalConflictError("not combinable: every focal-set tuple conflicts")

    lows = {t: math.inf for t in targets}
    highs = {t: -math.inf for t in targets}
    feasible = False
    for tuple_vertices in itertools.product(*vertex_sets):
        masses: dict[int, float] = {full: 1.0}
        for bits_list, vertex in zip(focal_bits, tuple_vertices):
            step: dict[int, float] = {}
            for acc_bits, acc_mass in masses.items():
                if acc_mass == 0.0:
                    continue
                for b, m in zip(bits_list, vertex):
                    if m == 0.0:
                        continue
                    step[acc_bits & b] = step.get(acc_bits & b, 0.0) + acc_mass * m
            masses = step
        conflict = masses.get(0, 0.0)
        denom = 1.0 - conflict
        if denom <= 1e-12:
            continue
        feasible = True
        for t in targets:
            value = masses.get(t, 0.0) / denom
            if value < lows[t]:
                lows[t] = value
            if value > highs[t]:
                highs[t] = value
    if not feasible:
        raise TotalConflictError(
            "not combinable: all vertex tuples are in total conflict"
        )
    entries = tuple(
        (FocalSet(bits), lows[bits], highs[bits]) for bits in sorted(targets)
    )
    ibs = IntervalBeliefStructure(bodies[0].frame, entries)
    return IntervalMassResult(
        bodies[0].frame, entries, includes_empty=None, normalized=is_normalized(ibs)
    )


# ---------------------------------------------------------------------------
# Song (intuitionistic route)


@dataclass(frozen=True)
class IfsElement:
    """An intuitionistic assessment of one singleton: membership ``mu``,
    non-membership ``gamma``, hesitancy ``pi = 1 - mu - gamma``."""

    target: FocalSet
    mu: float
    gamma: float

    def __post_init__(self) -> None:
        if self.target.cardinality != 1:
            raise IvbelError("IFS element target must be a singleton")
        if self.mu < -1e-12 or self.gamma < -1e-12 or self.mu + self.gamma > 1.0 + 1e-9:
            raise IvbelError(
                f"IFS element requires mu, gamma >= 0 and mu + gamma <= 1, "
                f"got mu={self.mu}, gamma={self.gamma}"
            )

    @property
    def pi(self) -> float:
        return max(0.0, 1.0 - self.mu - self.gamma)


def ifs_combine(e1: IfsElement, e2: IfsElement) -> IfsElement:
    """Combine two intuitionistic assessments of the same singleton.

    Algebraically this is Dempster's rule on a two-element frame with
    masses ``(mu, gamma, pi)`` on (yes, no, either); it is therefore
    commutative and associative.
    """
    if e1.target != e2.target:
        raise IvbelError("IFS elements must assess the same singleton")
    denom = 1.0 - e1.mu * e2.gamma - e2.mu * e1.gamma
    if denom <= 1e-12:
        raise TotalConflictError("IFS total conflict")
    mu = (e1.mu * (1.0 - e2.gamma) + e2.mu * e1.pi) / denom
    gamma = (e1.gamma * (1.0 - e2.mu) + e2.gamma * e1.pi) / denom
    return IfsElement(e1.target, min(mu, 1.0), min(gamma, 1.0))


def interval_pignistic(ibs: IntervalBeliefStructure) -> IntervalBeliefStructure:
    """Per-singleton pignistic bounds, normalized.

    Each bound spreads the corresponding mass bound uniformly over the
    focal set's elements; the resulting per-singleton intervals are then
    normalized so every bound is attainable.
    """
    frame = ibs.frame
    lows = {s.bits: 0.0 for s in frame.singletons()}
    highs = {s.bits: 0.0 for s in frame.singletons()}
    for fs, lo, hi in ibs.entries:
        card = fs.cardinality
        for i in range(frame.size):
            if i in fs:
                bit = 1 << i
                lows[bit] += lo / card
                highs[bit] += hi / card
    entries = tuple(
        (FocalSet(bits), lows[bits], min(1.0, highs[bits])) for bits in sorted(lows)
    )
    return normalize(IntervalBeliefStructure(frame, entries))


@dataclass(frozen=True)
class SongStages:
    """Audit trail of the Song pipeline."""

    normalized_bodies: tuple[IntervalBeliefStructure, ...]
    pignistic_bodies: tuple[IntervalBeliefStructure, ...]
    ifs_bodies: tuple[tuple[IfsElement, ...], ...]
    combined_ifs: tuple[IfsElement, ...]
    raw: IntervalMassResult
    result: IntervalMassResult


def song_combine_detail(bodies: Sequence[IntervalBeliefStructure]) -> SongStages:
    """Song's pipeline with every intermediate stage exposed.

    normalize each body -> interval pignistic per body -> read each
    singleton interval ``[a, b]`` as the assessment ``mu = a``,
    ``gamma = 1 - b`` -> fold assessments across bodies -> back to
    intervals ``[mu, 1 - gamma]`` -> final normalization.

    ``raw`` holds the back-transformed intervals before the final
    normalization; ``result`` is the normalized output (singletons only).
    """
    if len(bodies) < 2:
        raise IvbelError("no evidence: need at least two bodies to combine")
    _check_same_frame(bodies)
    frame = bodies[0].frame
    normalized_bodies = tuple(normalize(b) for b in bodies)
    pignistic_bodies = tuple(interval_pignistic(b) for b in normalized_bodies)

    ifs_bodies = []
    for body in pignistic_bodies:
        elements = []
        for s in frame.singletons():
            a, b = body.interval(s)
            elements.append(IfsElement(s, mu=a, gamma=1.0 - b))
        ifs_bodies.append(tuple(elements))

    combined = []
    for idx, s in enumerate(frame.singletons()):
        acc = ifs_bodies[0][idx]
        for elements in ifs_bodies[1:]:
            acc = ifs_combine(acc, elements[idx])
        combined.append(acc)

    # 1 - gamma can undershoot mu by a few ulps when the hesitancy is zero.
    raw_entries = tuple(
        (e.target, min(e.mu, 1.0 - e.gamma), 1.0 - e.gamma) for e in combined
    )
    raw_ibs = IntervalBeliefStructure(frame, raw_entries)
    raw = IntervalMassResult(
        frame, raw_entries, includes_empty=None, normalized=is_normalized(raw_ibs)
    )
    final_ibs = normalize(raw_ibs)
    result = IntervalMassResult(
        frame, final_ibs.entries, includes_empty=None, normalized=True
    )
    return SongStages(
        normalized_bodies=normalized_bodies,
        pignistic_bodies=pignistic_bodies,
        ifs_bodies=tuple(ifs_bodies),
        combined_ifs=tuple(combined),
        raw=raw,
        result=result,
    )


def song_combine(bodies: Sequence[IntervalBeliefStructure]) -> IntervalMassResult:
    """Song's combination: pignistic projection, intuitionistic fold,
    back-transform, final normalization.  Output is Bayesian (singleton
    focal sets only) and normalized."""
    return song_combine_detail(bodies).result
