"""Exact entropy-bound optimization: optimality certificates and oracles."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ivbel import (
    SEPARABLE_MEASURE_IDS,
    Frame,
    IntervalBeliefStructure,
    IvbelError,
    entropy,
    entropy_bounds,
    max_entropy_bpa,
    min_entropy_bpa,
    normalize,
)
from ivbel.entropy import entropy_from_profile, separable_profile
from ivbel.optimize import grid_oracle, water_fill
from ivbel.polytope import enumerate_vertices

from helpers import (
    FRAME3,
    random_aligned_ibs,
    random_normalized_ibs,
    random_point_in,
)

CONCAVE_IDS = tuple(m for m in SEPARABLE_MEASURE_IDS if m != "dubois-prade")


def normalized(mapping):
    return normalize(IntervalBeliefStructure.from_mapping(FRAME3, mapping))


class TestWaterFill:
    def test_unconstrained_uniform(self):
        masses, c = water_fill((0.0,) * 3, (1.0,) * 3, (1.0,) * 3)
        assert masses == pytest.approx((1 / 3,) * 3, abs=1e-9)
        assert c == pytest.approx(1 / 3, abs=1e-9)

    def test_weighted_split(self):
        # w = (1, 3): the free solution is (c, 3c) with sum 1, so c = 0.25.
        masses, c = water_fill((0.0, 0.0), (1.0, 1.0), (1.0, 3.0))
        assert masses == pytest.approx((0.25, 0.75), abs=1e-9)

    def test_clamped_coordinate(self):
        # Cap the heavy coordinate; the rest goes to the other one.
        masses, _ = water_fill((0.0, 0.0), (1.0, 0.5), (1.0, 3.0))
        assert masses == pytest.approx((0.5, 0.5), abs=1e-9)

    def test_infeasible_rejected(self):
        with pytest.raises(IvbelError, match="water filling requires"):
            water_fill((0.6, 0.6), (0.7, 0.7), (1.0, 1.0))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_kkt_certificate(self, seed):
        """Interior coordinates sit exactly at w*c; clamped ones would leave
        their bound if released."""
        rng = random.Random(seed)
        ibs = random_normalized_ibs(rng)
        weights = tuple(2.0 ** rng.uniform(0.0, 2.0) for _ in ibs.entries)
        masses, c = water_fill(ibs.lower_bounds, ibs.upper_bounds, weights)
        assert math.fsum(masses) == pytest.approx(1.0, abs=1e-9)
        for m, lo, hi, w in zip(masses, ibs.lower_bounds, ibs.upper_bounds, weights):
            free = w * c
            if m > lo + 1e-9 and m < hi - 1e-9:
                assert m == pytest.approx(free, abs=1e-7)
            elif abs(m - hi) <= 1e-9:
                assert free >= hi - 1e-7
            else:
                assert free <= lo + 1e-7


class TestLinearGreedy:
    """dubois-prade has beta=0: extrema come from greedy residual filling."""

    IBS = normalized(
        {
            ("X",): (0.2, 0.4),
            ("Y",): (0.3, 0.5),
            ("Z",): (0.1, 0.3),
            ("X", "Y", "Z"): (0.0, 0.4),
        }
    )

    def test_max_fills_widest_set_first(self):
        b = max_entropy_bpa(self.IBS, "dubois-prade")
        assert b.mass(FRAME3.full_set) == pytest.approx(0.4, abs=1e-12)
        assert entropy("dubois-prade", b) == pytest.approx(0.4 * math.log2(3), abs=1e-12)

    def test_min_splits_residual_equally_among_tied_singletons(self):
        # All three singletons share weight log2(1) = 0, so the 0.4 residual
        # is split three ways; nobody hits an upper bound.
        b = min_entropy_bpa(self.IBS, "dubois-prade")
        masses = tuple(b.mass(fs) for fs in self.IBS.focal_sets)
        assert masses == pytest.approx((1 / 3, 13 / 30, 7 / 30, 0.0), abs=1e-12)
        assert entropy("dubois-prade", b) == pytest.approx(0.0, abs=1e-12)

    def test_min_is_not_a_vertex_here(self):
        # The equal split leaves three coordinates strictly inside their
        # bounds, which no vertex does; linear objectives still allow it.
        b = min_entropy_bpa(self.IBS, "dubois-prade")
        masses = tuple(b.mass(fs) for fs in self.IBS.focal_sets)
        assert all(
            sum(abs(a - c) for a, c in zip(masses, v)) > 1e-9
            for v in enumerate_vertices(self.IBS)
        )

    def test_greedy_overflow_cascades_to_next_group(self):
        ibs = normalized(
            {("X",): (0.0, 0.1), ("Y",): (0.0, 0.2), ("X", "Y"): (0.0, 1.0)}
        )
        b = min_entropy_bpa(ibs, "dubois-prade")
        # Singletons saturate at 0.1 + 0.2; the doubleton takes the rest.
        assert tuple(m for _, m in b.entries) == pytest.approx((0.1, 0.2, 0.7))


class TestBounds:
    def test_requires_normalized(self):
        loose = IntervalBeliefStructure.from_mapping(
            FRAME3, {("X",): (0.1, 0.9), ("Y",): (0.1, 0.9), ("Z",): (0.1, 0.9)}
        )
        with pytest.raises(IvbelError, match="call normalize\\(\\) first"):
            entropy_bounds(loose, "deng")

    def test_solution_fields(self):
        ibs = normalized(
            {("X",): (0.2, 0.5), ("Y",): (0.2, 0.5), ("X", "Y", "Z"): (0.1, 0.5)}
        )
        sol = entropy_bounds(ibs, "deng")
        assert sol.measure_id == "deng"
        assert sol.h_min <= sol.h_max
        assert sol.h_max == pytest.approx(entropy("deng", sol.m_max), abs=1e-12)
        assert sol.h_min == pytest.approx(entropy("deng", sol.m_min), abs=1e-12)
        assert sol.min_tie_count >= 1

    def test_degenerate_structure_has_zero_width(self):
        ibs = normalized({("X",): (0.6, 0.6), ("Y", "Z"): (0.4, 0.4)})
        for mid in SEPARABLE_MEASURE_IDS:
            sol = entropy_bounds(ibs, mid)
            assert sol.h_min == pytest.approx(sol.h_max, abs=1e-12)

    def test_min_tie_count_on_symmetric_structure(self):
        # Fully symmetric singleton structure: every extreme vertex gives the
        # same entropy, so all vertices tie for the minimum.
        ibs = normalized(
            {("X",): (0.2, 0.6), ("Y",): (0.2, 0.6), ("Z",): (0.2, 0.6)}
        )
        sol = entropy_bounds(ibs, "nguyen")
        assert sol.min_tie_count == len(enumerate_vertices(ibs))
        # Lexicographic tie-break keeps the first vertex.
        assert tuple(m for _, m in sol.m_min.entries) == enumerate_vertices(ibs)[0]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_random_feasible_points_lie_inside_bounds(self, seed):
        rng = random.Random(seed)
        ibs = random_normalized_ibs(rng)
        sets = ibs.focal_sets
        for mid in SEPARABLE_MEASURE_IDS:
            sol = entropy_bounds(ibs, mid)
            profile = separable_profile(mid, sets, ibs.frame)
            for _ in range(5):
                h = entropy_from_profile(random_point_in(rng, ibs), profile)
                assert sol.h_min - 1e-9 <= h <= sol.h_max + 1e-9

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_grid_oracle_agreement(self, seed):
        rng = random.Random(seed)
        ibs = normalize(random_aligned_ibs(rng, step=0.01))
        for mid in SEPARABLE_MEASURE_IDS:
            sol = entropy_bounds(ibs, mid)
            g_min, g_max = grid_oracle(ibs, mid, step=0.01)
            # The lattice subsamples the polytope, so the scan can only
            # shrink the range; alignment keeps the loss tiny.
            assert g_min >= sol.h_min - 1e-9
            assert g_max <= sol.h_max + 1e-9
            assert abs(g_max - sol.h_max) < 2e-3
            assert abs(g_min - sol.h_min) < 2e-3


class TestGridOracle:
    def test_refuses_many_sets(self):
        frame = Frame(("A", "B", "C", "D", "E", "F"))
        ibs = IntervalBeliefStructure.from_mapping(
            frame, {(l,): (0.0, 1.0) for l in frame.labels}
        )
        with pytest.raises(IvbelError, match="limited to 5 focal sets"):
            grid_oracle(ibs, "deng")

    def test_exact_on_lattice_aligned_segment(self):
        frame = Frame(("A", "B"))
        ibs = IntervalBeliefStructure.from_mapping(
            frame, {("A",): (0.25, 0.75), ("B",): (0.25, 0.75)}
        )
        g_min, g_max = grid_oracle(ibs, "nguyen", step=0.25)
        # Lattice points: (0.25,0.75), (0.5,0.5), (0.75,0.25).
        assert g_max == pytest.approx(1.0, abs=1e-12)
        assert g_min == pytest.approx(
            -(0.25 * math.log2(0.25) + 0.75 * math.log2(0.75)), abs=1e-12
        )
