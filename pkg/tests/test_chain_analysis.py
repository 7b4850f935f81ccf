import pytest

from kernelchain import (
    ascent_via_measures,
    consistency_report,
    corollary_checks,
    descent_via_injectivity,
    identity_map,
    kernel_support,
    new_map,
    new_space,
)
from kernelchain.chain_analysis import Finite, Undetermined
from kernelchain.errors import InconsistencyFound, PositiveWeightRequired


class TestAscentViaMeasures:
    def test_running_example(self, tau_e1):
        assert ascent_via_measures(tau_e1) == Finite(2)

    def test_permutation(self, tau_e2):
        assert ascent_via_measures(tau_e2) == Finite(1)

    def test_bound_below_answer(self, tau_e1):
        assert ascent_via_measures(tau_e1, kmax=1) == Undetermined(1)


class TestDescentViaInjectivity:
    def test_running_example(self, tau_e1):
        result = descent_via_injectivity(tau_e1)
        assert result.n_inj == 2
        assert result.verdict == Finite(2)

    def test_permutation_injective_everywhere(self, tau_e2):
        result = descent_via_injectivity(tau_e2)
        assert result.n_inj == 0
        assert result.verdict == Finite(1)

    def test_decrement_map_on_ten_atoms(self):
        # n -> max(n-1, 1): images shrink one atom per step, injective
        # only once the image has collapsed to the fixed point {1}
        points = [str(i) for i in range(1, 11)]
        sp = new_space(points, [1] * 10)
        tau = new_map(sp, {p: str(max(int(p) - 1, 1)) for p in points})
        result = descent_via_injectivity(tau)
        assert result.n_inj == 9
        assert result.verdict == Finite(9)

    def test_positive_weights_required(self):
        sp = new_space(["1", "2"], [0, 1])
        tau = new_map(sp, {"1": "2", "2": "2"})
        with pytest.raises(PositiveWeightRequired):
            descent_via_injectivity(tau)

    def test_bound_below_answer(self, tau_e1):
        result = descent_via_injectivity(tau_e1, kmax=1)
        assert result.n_inj == Undetermined(1)
        assert result.verdict == Undetermined(1)


class TestCorollaries:
    def test_measure_preserving_branch(self, tau_e2):
        report = corollary_checks(tau_e2)
        assert report.measure_preserving
        assert report.ascent == Finite(1)

    def test_no_branch_applies(self):
        sp = new_space(["1", "2"], [1, 1])
        tau = new_map(sp, {"1": "1", "2": "1"})
        report = corollary_checks(tau)
        assert not report.measure_preserving
        assert not report.surjective_expanding
        assert report.note == "no corollary applicable"

    def test_identity_satisfies_both(self, space_e1):
        report = corollary_checks(identity_map(space_e1))
        assert report.measure_preserving
        assert report.surjective_expanding
        assert report.ascent == Finite(1)


class TestKernelSupport:
    def test_zero_sets_grow(self, tau_e1):
        sets = [kernel_support(tau_e1, k).zero_set for k in range(4)]
        for smaller, bigger in zip(sets, sets[1:]):
            assert smaller <= bigger
        assert sets[1] == {"1", "4"}
        assert sets[2] == {"1", "2", "4"}


class TestConsistencyReport:
    def test_running_example_consistent(self, tau_e1):
        report = consistency_report(tau_e1)
        assert report.consistent
        assert report.ascent_oracle == 2
        assert report.descent_oracle == 2
        assert report.ascent_theorem == Finite(2)
        assert report.descent_theorem == Finite(2)
        assert report.n_inj == 2

    def test_permutation_consistent(self, tau_e2):
        report = consistency_report(tau_e2)
        assert report.consistent
        assert report.ascent_oracle == 1
        assert report.descent_oracle == 1

    def test_records_cover_requested_range(self, tau_e1):
        report = consistency_report(tau_e1, kmax=2)
        assert [r.k for r in report.records] == [0, 1, 2]
        # verdicts stay definitive even when kmax is small
        assert report.ascent_theorem == Finite(2)

    def test_zero_set_complement_is_support(self, tau_e1):
        report = consistency_report(tau_e1)
        for rec in report.records:
            atoms = frozenset(tau_e1.space.points)
            assert atoms - rec.zero_set == rec.support

    def test_null_atom_comparisons_are_skipped(self):
        # a null tail feeding a positive fixed point: the matrix sees the
        # tail, the almost-everywhere operator does not
        sp = new_space(["a", "b", "c", "d"], [0, 0, 0, 1])
        tau = new_map(sp, {"a": "b", "b": "c", "c": "d", "d": "d"})
        report = consistency_report(tau)
        assert not report.all_weights_positive
        assert report.descent_theorem is None
        assert report.ascent_theorem == Finite(1)
        assert report.ascent_oracle == 3
        assert report.consistent  # gated checks still reconcile

    def test_strict_mode_raises(self, tau_e1):
        report = consistency_report(tau_e1, strict=True)
        assert report.consistent
        report.raise_if_inconsistent()  # no-op when consistent

    def test_raise_helper_fires_on_doctored_report(self, tau_e1):
        from dataclasses import replace
        report = consistency_report(tau_e1)
        broken = replace(report, consistent=False, failures=("synthetic",))
        with pytest.raises(InconsistencyFound):
            broken.raise_if_inconsistent()
