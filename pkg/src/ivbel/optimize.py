"""Exact entropy bounds over the feasible set of an interval structure.

For a separable measure ``H(m) = sum_A m(A)*(k_A - beta*log2 m(A))`` the
bounds over the feasible polytope are computed exactly:

* ``beta = 1``: H is strictly concave, so the maximum is interior and found
  by water-filling (each mass is ``clamp(w_A * c, lo_A, hi_A)`` with
  ``w_A = 2**k_A`` and a common level ``c`` found by bisection), while the
  minimum is attained at a vertex and found by scanning all vertices.
* ``beta = 0``: H is linear; both extrema are reached by greedily assigning
  the residual mass above the lower bounds in weight order, splitting the
  residual equally within groups of equal weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Bpa, IntervalBeliefStructure, IvbelError, is_normalized
from .entropy import EntropyMeasure, entropy_from_profile, measure, separable_profile
from .polytope import enumerate_vertices

__all__ = [
    "EntropyBoundsSolution",
    "MIN_TIE_TOL",
    "water_fill",
    "max_entropy_bpa",
    "min_entropy_bpa",
    "entropy_bounds",
    "grid_oracle",
]

# Vertices whose entropy is within this of the minimum count as tied; the
# lexicographically first vertex is kept.
MIN_TIE_TOL = 1e-10

_C_LO = 1e-12
_C_HI = 1e6
_BISECT_ITERS = 200
_BISECT_TOL = 1e-12


@dataclass(frozen=True)
class EntropyBoundsSolution:
    """Entropy bounds with the witnessing assignments.

    ``min_tie_count`` is the number of polytope vertices whose entropy lies
    within :data:`MIN_TIE_TOL` of the minimum (1 when the minimizer is
    unique or the measure is linear).
    """

    measure_id: str
    m_max: Bpa
    m_min: Bpa
    h_max: float
    h_min: float
    min_tie_count: int = 1


def _require_normalized(ibs: IntervalBeliefStructure) -> None:
    if not is_normalized(ibs):
        raise IvbelError(
            "entropy bounds require a normalized structure; call normalize() first"
        )


def water_fill(
    lower: tuple[float, ...], upper: tuple[float, ...], weights: tuple[float, ...]
) -> tuple[tuple[float, ...], float]:
    """Solve ``m_i = clamp(w_i * c, lo_i, hi_i)`` with ``sum(m) = 1``.

    Returns the mass vector and the level ``c``.  Requires
    ``sum(lo) <= 1 <= sum(hi)``; the clamped sum is nondecreasing in ``c``,
    so bisection converges.
    """
    if math.fsum(lower) > 1.0 + 1e-9 or math.fsum(upper) < 1.0 - 1e-9:
        raise IvbelError("water filling requires sum(lo) <= 1 <= sum(hi)")

    def clamped(c: float) -> list[float]:
        return [min(max(w * c, lo), hi) for lo, hi, w in zip(lower, upper, weights)]

    a, b = _C_LO, _C_HI
    c = a
    for _ in range(_BISECT_ITERS):
        c = 0.5 * (a + b)
        s = math.fsum(clamped(c))
        if abs(s - 1.0) < _BISECT_TOL:
            break
        if s < 1.0:
            a = c
        else:
            b = c
    return tuple(clamped(c)), c


def _greedy_linear(
    lower: tuple[float, ...],
    upper: tuple[float, ...],
    keys: tuple[float, ...],
    *,
    descending: bool,
) -> tuple[float, ...]:
    """Extremize a linear objective: fill the residual above the lower bounds
    group by group in key order, splitting equally within tied groups."""
    n = len(lower)
    m = list(lower)
    residual = 1.0 - math.fsum(lower)
    order = sorted(range(n), key=lambda i: keys[i], reverse=descending)
    groups: list[list[int]] = []
    for i in order:
        if groups and abs(keys[groups[-1][0]] - keys[i]) <= 1e-12:
            groups[-1].append(i)
        else:
            groups.append([i])
    for group in groups:
        while residual > 1e-15:
            active = [i for i in group if m[i] < upper[i] - 1e-15]
            if not active:
                break
            share = residual / len(active)
            for i in active:
                add = min(share, upper[i] - m[i])
                m[i] += add
                residual -= add
    return tuple(m)


def max_entropy_bpa(ibs: IntervalBeliefStructure, m: str | EntropyMeasure) -> Bpa:
    """The feasible BPA maximizing a separable measure.  Requires a
    normalized structure."""
    _require_normalized(ibs)
    meas = measure(m)
    profile = separable_profile(meas, ibs.focal_sets, ibs.frame)
    keys = tuple(k for k, _ in profile)
    if meas.beta == 0.0:
        masses = _greedy_linear(
            ibs.lower_bounds, ibs.upper_bounds, keys, descending=True
        )
    else:
        weights = tuple(2.0 ** k for k in keys)
        masses, _ = water_fill(ibs.lower_bounds, ibs.upper_bounds, weights)
    return Bpa(ibs.frame, tuple(zip(ibs.focal_sets, masses)))


def _min_vertex(
    ibs: IntervalBeliefStructure, profile: tuple[tuple[float, float], ...]
) -> tuple[tuple[float, ...], float, int]:
    vertices = enumerate_vertices(ibs)
    best_vec = vertices[0]
    best_h = entropy_from_profile(best_vec, profile)
    for vec in vertices[1:]:
        h = entropy_from_profile(vec, profile)
        if h < best_h - MIN_TIE_TOL:
            best_vec, best_h = vec, h
    ties = sum(
        1
        for vec in vertices
        if entropy_from_profile(vec, profile) <= best_h + MIN_TIE_TOL
    )
    return best_vec, best_h, ties


def min_entropy_bpa(ibs: IntervalBeliefStructure, m: str | EntropyMeasure) -> Bpa:
    """The feasible BPA minimizing a separable measure.  Requires a
    normalized structure.

    For strictly concave measures the minimum sits at a polytope vertex;
    vertices tying within :data:`MIN_TIE_TOL` are resolved in favor of the
    lexicographically first mass vector.
    """
    _require_normalized(ibs)
    meas = measure(m)
    profile = separable_profile(meas, ibs.focal_sets, ibs.frame)
    if meas.beta == 0.0:
        keys = tuple(k for k, _ in profile)
        masses = _greedy_linear(
            ibs.lower_bounds, ibs.upper_bounds, keys, descending=False
        )
    else:
        masses, _, _ = _min_vertex(ibs, profile)
    return Bpa(ibs.frame, tuple(zip(ibs.focal_sets, masses)))


def entropy_bounds(
    ibs: IntervalBeliefStructure, m: str | EntropyMeasure
) -> EntropyBoundsSolution:
    """Exact entropy bounds with witnesses for a separable measure."""
    _require_normalized(ibs)
    meas = measure(m)
    profile = separable_profile(meas, ibs.focal_sets, ibs.frame)
    keys = tuple(k for k, _ in profile)

    if meas.beta == 0.0:
        max_vec = _greedy_linear(ibs.lower_bounds, ibs.upper_bounds, keys, descending=True)
        min_vec = _greedy_linear(ibs.lower_bounds, ibs.upper_bounds, keys, descending=False)
        ties = 1
    else:
        weights = tuple(2.0 ** k for k in keys)
        max_vec, _ = water_fill(ibs.lower_bounds, ibs.upper_bounds, weights)
        min_vec, _, ties = _min_vertex(ibs, profile)

    h_max = entropy_from_profile(max_vec, profile)
    h_min = entropy_from_profile(min_vec, profile)
    if h_min > h_max + 1e-9:
        raise AssertionError(f"entropy bounds inverted: {h_min} > {h_max}")
    return EntropyBoundsSolution(
        measure_id=meas.id,
        m_max=Bpa(ibs.frame, tuple(zip(ibs.focal_sets, max_vec))),
        m_min=Bpa(ibs.frame, tuple(zip(ibs.focal_sets, min_vec))),
        h_max=h_max,
        h_min=min(h_min, h_max),
        min_tie_count=ties,
    )


_GRID_MAX_SETS = 5
_GRID_MAX_POINTS = 3_000_000


def _lattice_points(
    lower: tuple[float, ...], upper: tuple[float, ...], step: float
) -> np.ndarray:
    """Integer-lattice approximation of the feasible polytope.

    Enumerates all mass vectors whose coordinates are multiples of ``step``
    within the bounds and sum to one (up to rounding of ``1/step``).
    """
    units = round(1.0 / step)
    los = [math.ceil(lo / step - 1e-9) for lo in lower]
    his = [math.floor(hi / step + 1e-9) for hi in upper]
    if any(l > h for l, h in zip(los, his)):
        raise IvbelError("grid oracle: a bound interval contains no lattice point")

    suffix_lo = [0] * (len(lower) + 1)
    suffix_hi = [0] * (len(lower) + 1)
    for i in range(len(lower) - 1, -1, -1):
        suffix_lo[i] = suffix_lo[i + 1] + los[i]
        suffix_hi[i] = suffix_hi[i + 1] + his[i]

    # Partial sums grow coordinate by coordinate; prune rows that can no
    # longer reach the target total.
    rows = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for i in range(len(lower)):
        values = np.arange(los[i], his[i] + 1, dtype=np.int64)
        if rows.shape[0] * len(values) > _GRID_MAX_POINTS:
            raise IvbelError("grid oracle: too many lattice points; coarsen the step")
        new_rows = np.repeat(rows, len(values), axis=0)
        new_vals = np.tile(values, rows.shape[0])
        new_sums = np.repeat(sums, len(values)) + new_vals
        ok = (new_sums + suffix_lo[i + 1] <= units) & (
            new_sums + suffix_hi[i + 1] >= units
        )
        rows = np.column_stack([new_rows[ok], new_vals[ok]])
        sums = new_sums[ok]
        if rows.shape[0] == 0:
            raise IvbelError("grid oracle: no lattice point sums to one")
    return rows[sums == units] * step


def grid_oracle(
    ibs: IntervalBeliefStructure, m: str | EntropyMeasure, step: float = 0.005
) -> tuple[float, float]:
    """Brute-force entropy bounds over a lattice scan of the polytope.

    Test oracle only: exact up to the lattice resolution, and limited to
    structures with at most 5 focal sets.
    """
    if len(ibs.entries) > _GRID_MAX_SETS:
        raise IvbelError(
            f"grid oracle limited to {_GRID_MAX_SETS} focal sets, got {len(ibs.entries)}"
        )
    meas = measure(m)
    profile = separable_profile(meas, ibs.focal_sets, ibs.frame)
    points = _lattice_points(ibs.lower_bounds, ibs.upper_bounds, step)
    ks = np.array([k for k, _ in profile])
    betas = np.array([b for _, b in profile])
    logs = np.zeros_like(points)
    mask = points > 0.0
    logs[mask] = points[mask] * np.log2(points[mask])
    values = points @ ks - logs @ betas
    return float(values.min()), float(values.max())
