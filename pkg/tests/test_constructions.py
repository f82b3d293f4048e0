import pytest

from dicrit.colouring import check_dicolouring, dichromatic_number
from dicrit.constructions import (
    ConstructionSpec,
    G3Layout,
    all_gadgets,
    build_g3,
    build_gk,
    certify_dicritical_composition,
    gadget_forces_distinct,
    predicted_counts,
)
from dicrit.digraph import Digraph, DigraphError
from dicrit.packing import max_packing


class TestBuildG3:
    @pytest.mark.parametrize("n0, n, m", [(1, 12, 30), (2, 20, 50), (3, 28, 70)])
    def test_counts(self, n0, n, m):
        g, _ = build_g3(n0)
        assert (g.n, g.m) == (n, m)

    def test_oriented_and_packing_free(self):
        g, _ = build_g3(1)
        assert g.is_oriented()
        assert max_packing(g).value == 0

    def test_seeded_orientation_still_counts(self):
        g, layout = build_g3(2, orientation_seed=7)
        assert (g.n, g.m) == (20, 50)
        assert g.is_oriented()
        assert len(layout.gadgets) == 5

    def test_bad_n0(self):
        with pytest.raises(DigraphError):
            build_g3(0)


class TestBuildGk:
    def test_g4_counts(self):
        g, layout = build_gk(4, ConstructionSpec(k=4))
        assert (g.n, g.m) == (76, 330)
        assert g.is_oriented()
        assert len(layout.copies) == 6

    def test_g4_n0_2_counts(self):
        g, _ = build_gk(4, ConstructionSpec(k=4, n0=2))
        assert (g.n, g.m) == (124, 546)

    def test_ratio_bound_k4(self):
        g, _ = build_gk(4, ConstructionSpec(k=4))
        # m_k <= (2k - 7/2) n_k, here 330 <= 9/2 * 76 = 342
        assert 2 * g.m <= 9 * g.n

    @pytest.mark.parametrize("k", [3, 4, 5, 6])
    @pytest.mark.parametrize("n0", [1, 2, 3])
    def test_count_recurrences(self, k, n0):
        g, _ = build_gk(k, ConstructionSpec(k=k, n0=n0))
        assert (g.n, g.m) == predicted_counts(k, n0)
        assert 2 * g.m <= (4 * k - 7) * g.n

    def test_largest_instance_pinned(self):
        assert predicted_counts(6, 3) == (25881, 217815)

    def test_custom_tournament(self):
        cyclic = ((0, 1), (1, 2), (2, 0))
        spec = ConstructionSpec(k=4, tournaments={3: cyclic})
        with pytest.raises(DigraphError):
            # a 3-cycle is not a tournament on 4 vertices
            build_gk(4, ConstructionSpec(k=4, tournaments={4: cyclic}))
        g, _ = build_gk(4, spec)  # level-3 override is ignored by level 4
        assert (g.n, g.m) == (76, 330)


class TestGadget:
    def test_every_gadget_in_g3_forces(self):
        g, layout = build_g3(1)
        gadgets = list(all_gadgets(layout))
        assert len(gadgets) == 3
        for gadget in gadgets:
            assert gadget_forces_distinct(g, gadget.tail, gadget.head, gadget.triangle)

    def test_broken_gadget_fails(self):
        g, layout = build_g3(1)
        gadget = layout.gadgets[0]
        broken = g.without_arcs([(gadget.triangle[0], gadget.tail)])
        assert not gadget_forces_distinct(
            broken, gadget.tail, gadget.head, gadget.triangle
        )

    def test_degenerate_inputs_rejected(self):
        g, layout = build_g3(1)
        gadget = layout.gadgets[0]
        with pytest.raises(DigraphError):
            gadget_forces_distinct(g, gadget.tail, gadget.tail, gadget.triangle)
        with pytest.raises(DigraphError):
            gadget_forces_distinct(g, gadget.triangle[0], gadget.head, gadget.triangle)


class TestCertify:
    def test_k3_full_solver_certificate(self):
        report = certify_dicritical_composition(3)
        assert report.ok()
        assert report.lower_bound_method == "solver"
        assert report.witnesses_checked == report.witnesses_total == 30
        assert not report.sampled and not report.assumed

    def test_k4_compositional_certificate_all_arcs(self):
        report = certify_dicritical_composition(4)
        assert report.ok()
        assert report.lower_bound_method == "compositional"
        assert report.witnesses_checked == report.witnesses_total == 330
        assert not report.sampled and not report.assumed
        assert report.sub_certificate.lower_bound_method == "solver"

    def test_k4_sampled_certificate_flags_sampling(self):
        report = certify_dicritical_composition(4, witness_sample=30, seed=1)
        assert report.ok()
        assert report.sampled
        assert report.witnesses_checked == 30

    def test_k5_records_assumed_obligations(self):
        # the k=5 connection witnesses need solving a 76-vertex instance,
        # which is beyond desk scale; the certificate must say so, not fail
        report = certify_dicritical_composition(5, witness_sample=40, seed=2)
        assert report.lower_bound_method == "compositional"
        assert report.structural_ok
        assert not report.witness_failures
        assert report.assumed  # connection arcs hit the solve cap
        assert report.sub_certificate.k == 4

    def test_g3_is_3_dicritical_end_to_end(self):
        g, _ = build_g3(1)
        assert dichromatic_number(g) == 3
        assert certify_dicritical_composition(3).witness_failures == []
