import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dicrit.budget import Budget, BudgetExceeded
from dicrit.colouring import (
    Colouring,
    ColouringError,
    check_dicolouring,
    dichromatic_number,
    enumerate_k_dicolourings,
    is_k_dicolourable,
    is_k_dicritical,
)
from dicrit.constructions import build_g3
from dicrit.digraph import Digraph, bidirected_complete, bidirected_from_edges, directed_cycle

from .oracles import (
    oracle_chromatic_number,
    oracle_dichromatic_number,
    oracle_is_k_dicolourable,
    valid_dicolouring,
)
from .test_digraph import digraphs


class TestCheckDicolouring:
    def test_monochromatic_triangle(self, c3):
        ok, cycle = check_dicolouring(c3, Colouring(1, (1, 1, 1)))
        assert not ok
        assert sorted(cycle) == [0, 1, 2]

    def test_split_triangle(self, c3):
        ok, cycle = check_dicolouring(c3, Colouring(2, (1, 1, 2)))
        assert ok and cycle is None

    def test_digon_is_a_directed_2cycle(self, k4):
        ok, cycle = check_dicolouring(k4, Colouring(3, (1, 2, 3, 3)))
        assert not ok
        assert sorted(cycle) == [2, 3]

    def test_partial_assignment_rejected(self, c3):
        with pytest.raises(ColouringError):
            check_dicolouring(c3, Colouring(2, (1, 1)))


class TestIsKDicolourable:
    def test_c3_two_colours(self, c3):
        col = is_k_dicolourable(c3, 2)
        assert col is not None
        assert check_dicolouring(c3, col)[0]

    def test_k4_not_three(self, k4):
        assert is_k_dicolourable(k4, 3) is None

    def test_bidirected_c5(self, c5_bi):
        assert is_k_dicolourable(c5_bi, 2) is None
        col = is_k_dicolourable(c5_bi, 3)
        assert col is not None and check_dicolouring(c5_bi, col)[0]

    def test_budget_exhaustion_is_loud(self, k4):
        with pytest.raises(BudgetExceeded):
            is_k_dicolourable(k4, 3, Budget(5))

    @settings(max_examples=80)
    @given(digraphs(max_n=5), st.integers(1, 3))
    def test_agrees_with_assignment_enumeration(self, d, k):
        got = is_k_dicolourable(d, k)
        assert (got is not None) == oracle_is_k_dicolourable(d, k)
        if got is not None:
            assert valid_dicolouring(d, got.colours)

    def test_enumeration_finds_every_colouring(self, c3):
        found = {c.colours for c in enumerate_k_dicolourings(c3, 2)}
        expected = {
            assignment
            for assignment in itertools.product((1, 2), repeat=3)
            if valid_dicolouring(c3, assignment)
        }
        assert found == expected


class TestDichromaticNumber:
    def test_single_vertex(self):
        assert dichromatic_number(Digraph(1)) == 1

    @pytest.mark.parametrize("n", [2, 3, 5, 7])
    def test_directed_cycles(self, n):
        assert dichromatic_number(directed_cycle(n)) == 2

    def test_g3_needs_three(self):
        g3, _ = build_g3(1)
        assert dichromatic_number(g3) == 3

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_n=6))
    def test_matches_oracle(self, d):
        assert dichromatic_number(d) == oracle_dichromatic_number(d)

    @settings(max_examples=30)
    @given(digraphs(max_n=5), st.data())
    def test_arc_deletion_drops_by_at_most_one(self, d, data):
        if not d.arcs:
            return
        arc = data.draw(st.sampled_from(sorted(d.arcs)))
        chi = dichromatic_number(d)
        chi_minus = dichromatic_number(d.without_arcs([arc]))
        assert chi_minus in (chi, chi - 1)

    def test_bidirected_matches_chromatic_number(self):
        # chi(G) = dichromatic number of the bidirected G, cross-checked
        # against an independent proper-colouring brute force (n <= 10).
        import random as _random
        edge_sets = [
            (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
            (5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
            (5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]),
            (6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]),
        ]
        rng = _random.Random(7)
        for n in (8, 10):
            edges = [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.4
            ]
            edge_sets.append((n, edges))
        for n, edges in edge_sets:
            bid = bidirected_from_edges(n, edges)
            assert dichromatic_number(bid) == oracle_chromatic_number(n, edges)


class TestIsKDicritical:
    def test_k4_with_all_witnesses(self, k4):
        report = is_k_dicritical(k4, 4)
        assert report.verdict
        assert len(report.witnesses) == 12
        for arc, witness in report.witnesses.items():
            ok, _ = check_dicolouring(k4.without_arcs([arc]), witness)
            assert ok and witness.k == 3

    def test_k3(self, k3):
        assert is_k_dicritical(k3, 3).verdict

    def test_pendant_arc_not_critical(self, c3):
        d = Digraph(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
        report = is_k_dicritical(d, 2)
        assert not report.verdict
        assert report.failure_arc == (0, 3)

    def test_isolated_vertex_not_critical(self):
        d = Digraph(4, [(0, 1), (1, 2), (2, 0)])
        report = is_k_dicritical(d, 2)
        assert not report.verdict
        assert "isolated" in report.failure_reason

    def test_wrong_k(self, k4):
        assert not is_k_dicritical(k4, 3).verdict
        assert not is_k_dicritical(k4, 5).verdict

    def test_json_embeds_instance(self, k3):
        blob = is_k_dicritical(k3, 3).to_json()
        assert blob["digraph"].startswith("n 3 m 6")
        assert blob["verdict"] is True
