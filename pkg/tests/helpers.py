"""Seeded random generators shared by the unit and acceptance suites."""

from __future__ import annotations

import random

from ivbel import (
    Bpa,
    Frame,
    IntervalBeliefStructure,
    enumerate_vertices,
    normalize,
)

FRAME3 = Frame(("X", "Y", "Z"))

# Every non-empty subset of a 3-element frame, as label tuples.
ALL_SUBSETS3 = (
    ("X",),
    ("Y",),
    ("Z",),
    ("X", "Y"),
    ("X", "Z"),
    ("Y", "Z"),
    ("X", "Y", "Z"),
)


def random_bpa(rng: random.Random, frame: Frame = FRAME3, max_sets: int = 4) -> Bpa:
    """A BPA over 1..max_sets random focal sets with Dirichlet-like masses."""
    subsets = [frame.subset(s) for s in ALL_SUBSETS3 if set(s) <= set(frame.labels)]
    k = rng.randint(1, min(max_sets, len(subsets)))
    chosen = rng.sample(subsets, k)
    weights = [rng.expovariate(1.0) + 1e-12 for _ in chosen]
    total = sum(weights)
    return Bpa(frame, tuple((fs, w / total) for fs, w in zip(chosen, weights)))


def random_valid_ibs(
    rng: random.Random, frame: Frame = FRAME3, max_sets: int = 4
) -> IntervalBeliefStructure:
    """A structure that admits at least one BPA (lower sum <= 1 <= upper sum).

    Drawn by rejection so the bounds stay generic; includes the full set so
    random pairs are rarely in total conflict.
    """
    subsets = [frame.subset(s) for s in ALL_SUBSETS3 if set(s) <= set(frame.labels)]
    while True:
        k = rng.randint(2, min(max_sets, len(subsets)))
        chosen = rng.sample(subsets, k - 1) + [frame.full_set]
        chosen = list(dict.fromkeys(chosen))
        entries = []
        for fs in chosen:
            lo = rng.uniform(0.0, 0.45)
            hi = min(1.0, lo + rng.uniform(0.0, 0.5))
            entries.append((fs, lo, hi))
        if sum(e[1] for e in entries) <= 1.0 <= sum(e[2] for e in entries):
            return IntervalBeliefStructure(frame, tuple(entries))


def random_normalized_ibs(
    rng: random.Random, frame: Frame = FRAME3, max_sets: int = 4
) -> IntervalBeliefStructure:
    return normalize(random_valid_ibs(rng, frame, max_sets))


def random_aligned_ibs(
    rng: random.Random, step: float = 0.005
) -> IntervalBeliefStructure:
    """Valid structure over singletons + full set with step-aligned bounds.

    Tightening preserves the alignment, so the exact polytope vertices fall on
    the lattice a grid scan visits; widths are capped to keep that scan small.
    """
    units = round(1.0 / step)
    sets = [FRAME3.subset(s) for s in (("X",), ("Y",), ("Z",))] + [FRAME3.full_set]
    while True:
        lows = [rng.randrange(0, units // 4 + 1) * step for _ in sets]
        his = [
            min(1.0, lo + rng.randrange(units // 20, units // 5 + 1) * step)
            for lo in lows
        ]
        if sum(lows) <= 1.0 <= sum(his):
            return IntervalBeliefStructure(
                FRAME3, tuple((fs, lo, hi) for fs, lo, hi in zip(sets, lows, his))
            )


def random_aligned_general_ibs(
    rng: random.Random, step: float = 0.005
) -> IntervalBeliefStructure:
    """Valid structure over arbitrary focal sets with step-aligned bounds.

    Alignment makes every polytope vertex a lattice point (bounds and their
    residuals stay multiples of ``step`` through tightening), so a grid scan
    of the same step can attain the exact extrema.
    """
    subsets = [FRAME3.subset(s) for s in ALL_SUBSETS3]
    units = round(1.0 / step)
    while True:
        k = rng.randint(2, 4)
        chosen = rng.sample(subsets, k - 1) + [FRAME3.full_set]
        chosen = list(dict.fromkeys(chosen))
        entries = []
        for fs in chosen:
            lo = rng.randrange(0, int(0.45 * units) + 1) * step
            hi = min(1.0, lo + rng.randrange(0, units // 2 + 1) * step)
            entries.append((fs, lo, hi))
        if sum(e[1] for e in entries) <= 1.0 <= sum(e[2] for e in entries):
            return IntervalBeliefStructure(FRAME3, tuple(entries))


def random_point_in(
    rng: random.Random, ibs: IntervalBeliefStructure
) -> tuple[float, ...]:
    """A random feasible mass vector: a convex combination of the vertices."""
    vertices = enumerate_vertices(ibs)
    weights = [rng.expovariate(1.0) + 1e-12 for _ in vertices]
    total = sum(weights)
    return tuple(
        sum(w * v[i] for w, v in zip(weights, vertices)) / total
        for i in range(len(ibs.entries))
    )
