from fractions import Fraction

import numpy as np
import pytest

from manirep import groups as G
from manirep.classify import (
    CompactBlocks,
    TargetSpec,
    admissible,
    enumerate_admissible,
    minimality_certificate,
    stabilizer_form,
)
from manirep.embeddings import ManifoldDescriptor
from manirep.errors import UnsupportedGroup, WitnessNotInModule
from manirep.gmodules import module_dim


class TestAdmissible:
    def test_sl9_adjoint(self):
        rep = admissible(TargetSpec(G.sl(9, "C"), (0, 0, 0, 1)))
        assert rep.admissible and rep.inequality_value == -1
        assert rep.module_dim_total == 80

    def test_sl9_full_stack(self):
        rep = admissible(TargetSpec(G.sl(9, "C"), (9, 0, 0, 0)))
        assert rep.admissible and rep.inequality_value == 0
        assert rep.module_dim_total == 81

    def test_sl9_mixed_rejected(self):
        rep = admissible(TargetSpec(G.sl(9, "C"), (1, 1, 1, 0)))
        assert not rep.admissible and rep.inequality_value == 9

    def test_so19_pair(self):
        rep = admissible(TargetSpec(G.so(19, "C"), (0, 1, 1)))
        assert rep.admissible and rep.inequality_value == -1
        assert rep.module_dim_total == 171 + 189

    def test_sp_compact_pairs(self):
        for mult, ok in [((1, 1), True), ((0, 1), True), ((1, 0), True), ((0, 0), False)]:
            assert admissible(TargetSpec(G.sp_compact(10), mult)).admissible == ok

    def test_value_is_dim_gap(self):
        # for SL and SO the inequality value is exactly dim(W) - n^2
        for mult in [(0, 0, 0, 1), (3, 1, 0, 0), (9, 0, 0, 0), (0, 2, 1, 1)]:
            rep = admissible(TargetSpec(G.sl(9, "C"), mult))
            assert rep.inequality_value == rep.module_dim_total - 81
        for mult in [(0, 1, 1), (2, 0, 1), (19, 0, 0)]:
            rep = admissible(TargetSpec(G.so(19, "C"), mult))
            assert rep.inequality_value == rep.module_dim_total - 361

    def test_sp_value_is_half_dim_gap(self):
        for mult in [(0, 1, 1), (1, 0, 1), (10, 0, 0)]:
            rep = admissible(TargetSpec(G.sp(10, "C"), mult))
            assert rep.inequality_value == Fraction(rep.module_dim_total - 100, 2)

    def test_unsupported_group(self):
        with pytest.raises(UnsupportedGroup):
            admissible(TargetSpec(G.gl(5), (1,)))


class TestEnumerate:
    def test_su9_exactly_one(self):
        reps = enumerate_admissible(G.su(9))
        assert len(reps) == 1
        assert reps[0].spec.multiplicities == (1,)
        assert reps[0].module_dim_total == 80

    def test_sp_compact_exactly_three(self):
        reps = enumerate_admissible(G.sp_compact(10))
        assert [r.spec.multiplicities for r in reps] == [(1, 0), (0, 1), (1, 1)]

    def test_sl9_sweep(self):
        reps = enumerate_admissible(G.sl(9, "C"))
        mults = {r.spec.multiplicities for r in reps}
        for b in range(10):
            assert (b, 0, 0, 0) in mults
        assert (0, 0, 0, 1) in mults
        assert (1, 1, 1, 0) not in mults

    def test_sorted_by_dimension(self):
        reps = enumerate_admissible(G.so(19, "C"))
        dims = [r.module_dim_total for r in reps]
        assert dims == sorted(dims)

    def test_inadmissible_exceed_bound(self):
        # every rejected tuple in range overshoots the dimension bound
        from itertools import product

        for mult in product(range(10), range(3), range(2), range(2)):
            rep = admissible(TargetSpec(G.sl(9, "C"), mult))
            if not rep.admissible:
                assert rep.module_dim_total > 81
        for mult in product(range(20), range(3), range(3)):
            rep = admissible(TargetSpec(G.so(19, "C"), mult))
            if not rep.admissible:
                assert rep.module_dim_total > 361
        for mult in product(range(11), range(2), range(2)):
            rep = admissible(TargetSpec(G.sp(10, "C"), mult))
            if not rep.admissible:
                assert rep.module_dim_total > 100


class TestStabilizerForm:
    def test_sl9_adjoint_witness(self):
        spec = TargetSpec(G.sl(9, "C"), (0, 0, 0, 1))
        X = np.diag(np.arange(1.0, 10.0) - 5.0).astype(complex)
        rep = stabilizer_form(spec, [X])
        # distinct spectrum: the commutant torus cut to determinant one
        assert rep.h_dim == 8
        assert rep.factors[0].commutant_dim == 9

    def test_so9_vector_witness(self):
        spec = TargetSpec(G.so(9, "R"), (1, 0, 0))
        e1 = np.zeros((9, 1))
        e1[0, 0] = 1.0
        rep = stabilizer_form(spec, [e1])
        assert rep.h_dim == 28

    def test_sl9_adjoint_multiplicity_witness(self):
        # traceless spectrum 1,1,2,2,2,-2,-2,-2,-2: commutant blocks (2,3,4)
        spec = TargetSpec(G.sl(9, "C"), (0, 0, 0, 1))
        X = np.diag([1.0, 1, 2, 2, 2, -2, -2, -2, -2]).astype(complex)
        rep = stabilizer_form(spec, [X])
        assert rep.h_dim == 4 + 9 + 16 - 1

    def test_su9_witness(self):
        spec = TargetSpec(G.su(9), (1,))
        X = 1j * np.diag([7.0] * 2 + [-2.0] * 7)
        rep = stabilizer_form(spec, [X])
        assert rep.h_dim == 52
        blk = rep.factors[0]
        assert isinstance(blk, CompactBlocks)
        assert sorted(blk.sizes) == [2, 7]
        assert blk.dim == 52

    def test_direct_sum_consistency(self):
        # two witnesses vs the stacked pair: identical dimensions
        rng = np.random.default_rng(0)
        from manirep.gmodules import ActionKind, ModuleDescriptor
        from manirep.stabilizers import intersect_stabilizer_dim

        m = ModuleDescriptor("RectNK", 7, "R", k=1)
        mm = ModuleDescriptor("RectNK", 7, "R", k=2)
        for trial in range(50):
            v1 = rng.standard_normal((7, 1))
            v2 = rng.standard_normal((7, 1))
            two = intersect_stabilizer_dim(
                G.so(7), [(m, ActionKind.LEFT_MULT, v1), (m, ActionKind.LEFT_MULT, v2)]
            )
            stacked = intersect_stabilizer_dim(
                G.so(7), [(mm, ActionKind.LEFT_MULT, np.concatenate([v1, v2], axis=1))]
            )
            assert two == stacked

    def test_witness_validation(self):
        spec = TargetSpec(G.so(9, "R"), (0, 1, 0))
        with pytest.raises(WitnessNotInModule):
            stabilizer_form(spec, [np.eye(9)])

    def test_intersection_dims_example(self):
        # stabilizers of (e1, e1) and (e1, e9): same factors, different H
        spec = TargetSpec(G.so(9, "R"), (2, 0, 0))
        Y_same = np.zeros((9, 2)); Y_same[0, 0] = Y_same[0, 1] = 1.0
        Y_diff = np.zeros((9, 2)); Y_diff[0, 0] = Y_diff[8, 1] = 1.0
        assert stabilizer_form(spec, [Y_same]).h_dim == 28
        assert stabilizer_form(spec, [Y_diff]).h_dim == 21


class TestMinimality:
    def test_gr_real_19(self):
        rep = minimality_certificate(ManifoldDescriptor("gr-real", n=19, k=2))
        assert rep.certified and not rep.advisory
        assert rep.dim_v == 189 and rep.h_dim == 137
        assert all(s != rep.h_dim for _, _, s in rep.candidates)

    def test_stiefel_19(self):
        rep = minimality_certificate(ManifoldDescriptor("stiefel-real", n=19, k=2))
        assert rep.certified and not rep.advisory
        assert rep.dim_v == 38

    def test_gr_real_9_advisory(self):
        rep = minimality_certificate(ManifoldDescriptor("gr-real", n=9, k=2))
        assert rep.certified and rep.advisory
        assert rep.dim_v == 44

    def test_su_families_trivial_sweep(self):
        rep = minimality_certificate(ManifoldDescriptor("gr-complex", n=9, k=2))
        assert rep.certified
        assert rep.candidates == []

    def test_quaternionic(self):
        rep = minimality_certificate(ManifoldDescriptor("gr-quaternionic", n=5, k=2))
        assert rep.certified and not rep.advisory

    def test_lgr(self):
        rep = minimality_certificate(ManifoldDescriptor("lgr-c", n=5))
        assert rep.certified and not rep.advisory

    def test_all_families_certify_at_smallest_legal(self):
        from manirep.embeddings import all_smallest_legal

        for md in all_smallest_legal():
            rep = minimality_certificate(md)
            assert rep.certified and rep.advisory, md.family

    @pytest.mark.parametrize("md", [
        ManifoldDescriptor("igr", n=19, k=3),
        ManifoldDescriptor("ifl-even", n=10, ks=(2, 5)),
        ManifoldDescriptor("gr-indefinite", n=19, pq=(2, 1), sizes=(10, 9)),
        ManifoldDescriptor("gr-sp-real", n=5, k=2),
        ManifoldDescriptor("fl-sp", n=5, ks=(1, 3), field="R"),
        ManifoldDescriptor("fl-complex", n=9, ks=(2, 5)),
        ManifoldDescriptor("lfl", n=5, ks=(2, 3)),
        ManifoldDescriptor("sogr-c", n=10),
        ManifoldDescriptor("gr-complex-locus", n=19, k=4),
        ManifoldDescriptor("ifl-odd", n=8, ks=(2, 5), p=3),
    ], ids=lambda m: m.family)
    def test_full_range_families_certify_cleanly(self, md):
        rep = minimality_certificate(md)
        assert rep.certified and not rep.advisory
        assert rep.dim_collisions == []

    def test_flag_stack_dimension_tie_is_distinguished(self):
        # dim S(O_1 x O_1 x O_17) = dim SO_17: the 2-frame stack target ties
        # the flag stabilizer dimension but has a different block structure
        rep = minimality_certificate(ManifoldDescriptor("fl-real", n=19, ks=(1, 2)))
        assert rep.certified and not rep.advisory
        assert rep.dim_collisions == [(2, 0, 0)]
        assert rep.h_dim == 136
