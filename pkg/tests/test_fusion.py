"""Dempster's rule and the entropy-bound interval combination."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ivbel import (
    Bpa,
    Frame,
    IvbelError,
    TotalConflictError,
    dempster_combine,
    dempster_combine_n,
    dempster_conflict,
    normalize,
    proposed_combine,
    proposed_combine_report,
)
from ivbel.reproduce import load_bundled

from helpers import FRAME3, random_bpa, random_normalized_ibs, random_valid_ibs

FRAME = Frame(("A", "B", "C"))


def bpa(mapping):
    return Bpa.from_mapping(FRAME, mapping)


class TestDempster:
    def test_hand_worked_pair(self):
        b1 = bpa({("A",): 0.6, ("A", "B"): 0.4})
        b2 = bpa({("B",): 0.5, ("A", "B", "C"): 0.5})
        combined, diag = dempster_combine(b1, b2)
        # Conflict: only A x B (0.6 * 0.5).
        assert diag.conflict_mass == pytest.approx(0.3, abs=1e-12)
        assert combined.mass(FRAME.singleton("A")) == pytest.approx(0.3 / 0.7)
        assert combined.mass(FRAME.singleton("B")) == pytest.approx(0.2 / 0.7)
        assert combined.mass(FRAME.subset(("A", "B"))) == pytest.approx(0.2 / 0.7)

    def test_total_conflict(self):
        b1 = bpa({("A",): 1.0})
        b2 = bpa({("B",): 1.0})
        assert not dempster_conflict(b1, b2).combinable
        with pytest.raises(TotalConflictError, match="not combinable: total conflict"):
            dempster_combine(b1, b2)

    def test_vacuous_is_neutral(self):
        b = bpa({("A",): 0.6, ("B", "C"): 0.4})
        vacuous = bpa({("A", "B", "C"): 1.0})
        combined, diag = dempster_combine(b, vacuous)
        assert combined.entries == b.entries
        assert diag.conflict_mass == 0.0

    def test_frames_must_match(self):
        other = Bpa.from_mapping(FRAME3, {("X",): 1.0})
        with pytest.raises(IvbelError, match="share one frame"):
            dempster_combine(bpa({("A",): 1.0}), other)

    def test_fold_requires_input(self):
        with pytest.raises(IvbelError, match="at least one body"):
            dempster_combine_n(())

    def test_fold_single_body_is_identity(self):
        b = bpa({("A",): 0.6, ("B", "C"): 0.4})
        folded, diag = dempster_combine_n((b,))
        assert folded.entries == b.entries
        assert diag.conflict_mass == 0.0

    def test_fold_cumulative_conflict(self):
        b1 = bpa({("A",): 0.6, ("A", "B"): 0.4})
        b2 = bpa({("B",): 0.5, ("A", "B", "C"): 0.5})
        _, d12 = dempster_combine(b1, b2)
        step1, _ = dempster_combine(b1, b2)
        _, d3 = dempster_combine(step1, b1)
        _, total = dempster_combine_n((b1, b2, b1))
        expected = 1.0 - (1.0 - d12.conflict_mass) * (1.0 - d3.conflict_mass)
        assert total.conflict_mass == pytest.approx(expected, abs=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_commutative(self, seed):
        rng = random.Random(seed)
        b1, b2 = random_bpa(rng), random_bpa(rng)
        try:
            left, dl = dempster_combine(b1, b2)
            right, dr = dempster_combine(b2, b1)
        except TotalConflictError:
            return
        assert dl.conflict_mass == pytest.approx(dr.conflict_mass, abs=1e-12)
        for fs, m in left.entries:
            assert right.mass(fs) == pytest.approx(m, abs=1e-10)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_associative(self, seed):
        rng = random.Random(seed)
        b1, b2, b3 = (random_bpa(rng) for _ in range(3))
        try:
            left = dempster_combine(dempster_combine(b1, b2)[0], b3)[0]
            right = dempster_combine(b1, dempster_combine(b2, b3)[0])[0]
        except TotalConflictError:
            return
        for fs, m in left.entries:
            assert right.mass(fs) == pytest.approx(m, abs=1e-10)


class TestProposedCombine:
    def test_bundled_two_body_example_exact(self):
        ev = load_bundled("example4")
        frame = ev.frame
        bodies = [normalize(ibs) for _, ibs in ev.bodies]
        result = proposed_combine(bodies, "pal")
        expected = {
            ("A1",): (0.49, 0.91),
            ("A1", "A2"): (0.05, 0.21),
            ("A1", "A3"): (0.04, 0.21),
            ("A1", "A2", "A3"): (0.0, 0.09),
        }
        assert len(result.entries) == len(expected)
        for labels, (lo, hi) in expected.items():
            got = result.interval(frame.subset(labels))
            assert got[0] == pytest.approx(lo, abs=1e-12)
            assert got[1] == pytest.approx(hi, abs=1e-12)
        assert result.normalized

    def test_report_audit_trail(self):
        ev = load_bundled("example4")
        bodies = [normalize(ibs) for _, ibs in ev.bodies]
        rep = proposed_combine_report(bodies, "pal")
        labels = [name for name, _ in rep.intermediate_bpas]
        assert labels == [
            "body1.max",
            "body1.min",
            "body2.max",
            "body2.min",
            "fold.max",
            "fold.min",
        ]
        assert rep.method == "proposed[pal]"
        assert len(rep.diagnostics) == 2
        # Every focal set here contains A1, so neither fold sees conflict.
        assert rep.diagnostics[0].conflict_mass == pytest.approx(0.0, abs=1e-12)
        assert rep.diagnostics[1].conflict_mass == pytest.approx(0.0, abs=1e-12)

    def test_rejects_single_body(self):
        ev = load_bundled("example4")
        body = normalize(ev.bodies[0][1])
        with pytest.raises(IvbelError, match="at least two bodies"):
            proposed_combine((body,))

    def test_rejects_unnormalized_body(self):
        loose = random_valid_ibs(random.Random(7))
        ok = random_normalized_ibs(random.Random(8))
        from ivbel import is_normalized

        assert not is_normalized(loose)
        with pytest.raises(IvbelError, match="body 1 is not normalized"):
            proposed_combine((loose, ok))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_output_hull_is_already_tight(self, seed):
        """The folded max/min BPAs share a support, and the interval hull of
        two BPAs on a shared support is always tight; the fallback
        renormalization stays unreachable."""
        rng = random.Random(seed)
        bodies = [random_normalized_ibs(rng) for _ in range(rng.randint(2, 3))]
        try:
            rep = proposed_combine_report(bodies, "deng")
        except TotalConflictError:
            return
        assert rep.normalization_applied is False
        assert rep.result.normalized

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_permutation_invariant(self, seed):
        rng = random.Random(seed)
        bodies = [random_normalized_ibs(rng) for _ in range(3)]
        try:
            forward = proposed_combine(bodies, "pal")
        except TotalConflictError:
            return
        shuffled = list(bodies)
        rng.shuffle(shuffled)
        back = proposed_combine(shuffled, "pal")
        assert len(forward.entries) == len(back.entries)
        for fs, lo, hi in forward.entries:
            lo2, hi2 = back.interval(fs)
            assert lo2 == pytest.approx(lo, abs=1e-10)
            assert hi2 == pytest.approx(hi, abs=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_interval_spans_both_folds(self, seed):
        rng = random.Random(seed)
        bodies = [random_normalized_ibs(rng) for _ in range(2)]
        try:
            rep = proposed_combine_report(bodies, "pal")
        except TotalConflictError:
            return
        stage = dict(rep.intermediate_bpas)
        for fs, lo, hi in rep.result.entries:
            a = stage["fold.max"].mass(fs)
            b = stage["fold.min"].mass(fs)
            assert lo == pytest.approx(min(a, b), abs=1e-12)
            assert hi == pytest.approx(max(a, b), abs=1e-12)
