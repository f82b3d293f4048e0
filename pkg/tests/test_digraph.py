import pytest
from hypothesis import given, settings, strategies as st

from dicrit.digraph import (
    Digraph,
    DigraphError,
    ParseError,
    bidirected_complete,
    bidirected_path,
    boundary,
    directed_cycle,
    identify,
    induced,
    is_k_connected,
    parse,
    profiles,
    serialize,
)


@st.composite
def digraphs(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    possible = [(u, v) for u in range(n) for v in range(n) if u != v]
    if possible:
        arcs = draw(st.sets(st.sampled_from(possible)))
    else:
        arcs = set()
    return Digraph(n, arcs)


class TestConstruction:
    def test_rejects_empty(self):
        with pytest.raises(DigraphError):
            Digraph(0)

    def test_rejects_self_loop(self):
        with pytest.raises(DigraphError):
            Digraph(2, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(DigraphError):
            Digraph(2, [(0, 2)])

    def test_rejects_duplicate(self):
        with pytest.raises(DigraphError):
            Digraph(2, [(0, 1), (0, 1)])

    def test_digons(self, k4):
        assert len(k4.digons()) == 6
        assert k4.is_bidirected()
        assert not k4.is_oriented()

    def test_builders(self, c3):
        assert c3.without_arcs([(0, 1)]).m == 2
        assert c3.with_arcs([(1, 0)]).has_digon(0, 1)
        assert c3.reverse().arcs == {(1, 0), (2, 1), (0, 2)}


class TestParse:
    def test_digon(self):
        d = parse("n 2 m 2\n0 1\n1 0\n")
        assert d.n == 2 and d.digons() == [(0, 1)]

    def test_directed_triangle(self):
        d = parse("n 3 m 3\n0 1\n1 2\n2 0\n")
        assert d == directed_cycle(3)

    def test_single_vertex(self):
        d = parse("n 1 m 0\n")
        assert d.n == 1 and d.m == 0

    def test_comments_and_blanks(self):
        d = parse("# a comment\n\nn 2 m 1\n# another\n0 1\n")
        assert d.m == 1

    @pytest.mark.parametrize(
        "text, line",
        [
            ("n 2 x 1\n0 1\n", 1),
            ("n 2 m 1\n0 5\n", 2),
            ("n 2 m 1\n1 1\n", 2),
            ("# lead\nn 2 m 2\n0 1\n0 1\n", 4),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.line == line

    def test_arc_count_mismatch(self):
        with pytest.raises(ParseError):
            parse("n 2 m 2\n0 1\n")

    @settings(max_examples=150)
    @given(digraphs())
    def test_roundtrip(self, d):
        assert parse(serialize(d)) == d


class TestProfiles:
    def test_k4(self, k4):
        for p in profiles(k4):
            assert p.degree == 6 and p.neighbour_count == 3
            assert p.simple_neighbours == ()

    def test_c3(self, c3):
        for p in profiles(c3):
            assert p.degree == 2 and p.neighbour_count == 2
            assert len(p.simple_neighbours) == 2

    def test_digon(self):
        d = Digraph(2, [(0, 1), (1, 0)])
        for p in profiles(d):
            assert p.degree == 2 and p.neighbour_count == 1
            assert p.simple_neighbours == ()

    @settings(max_examples=100)
    @given(digraphs())
    def test_degree_sums_and_digon_identity(self, d):
        ps = profiles(d)
        assert sum(p.out_degree for p in ps) == d.m
        assert sum(p.in_degree for p in ps) == d.m
        for p in ps:
            assert p.degree == p.neighbour_count + d.digon_count_at(p.vertex)


class TestInduced:
    def test_k4_triple(self, k4):
        sub, _ = induced(k4, [0, 1, 3])
        assert sub == bidirected_complete(3)

    def test_c3_pair(self, c3):
        sub, mapping = induced(c3, [0, 1])
        assert sub.arcs == {(mapping[0], mapping[1])}

    def test_identity(self, c3):
        sub, mapping = induced(c3, range(3))
        assert sub == c3 and mapping == {0: 0, 1: 1, 2: 2}

    def test_empty_rejected(self, c3):
        with pytest.raises(DigraphError):
            induced(c3, [])


class TestBoundary:
    def test_joined_vertex_only(self):
        # isolated digon {0,1} plus vertex 2 joined to 3 outward
        d = Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
        assert boundary(d, [0, 1, 2]) == {2}

    def test_directed_triangle(self, c3):
        assert boundary(c3, [0, 1]) == {0, 1}

    def test_disjoint_digons(self):
        d = Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
        assert boundary(d, [0, 1]) == frozenset()

    def test_whole_set_rejected(self, c3):
        with pytest.raises(DigraphError):
            boundary(c3, [0, 1, 2])

    @settings(max_examples=100)
    @given(digraphs(), st.data())
    def test_boundary_inside_subset(self, d, data):
        if d.n < 2:
            return
        size = data.draw(st.integers(1, d.n - 1))
        subset = data.draw(
            st.sets(st.sampled_from(range(d.n)), min_size=size, max_size=size)
        )
        bd = boundary(d, subset)
        assert bd <= subset
        crossing = any(
            (u in subset) != (v in subset) for u, v in d.arcs
        )
        assert bool(bd) == crossing


class TestIdentify:
    def test_fold_triangle_to_digon(self, c3):
        folded, _ = identify(c3, [{0, 1}])
        assert folded.n == 2 and folded.arcs == {(0, 1), (1, 0)}

    def test_singletons_are_identity(self, k4):
        same, mapping = identify(k4, [{0}, {1}])
        assert same == k4
        assert mapping == {v: v for v in range(4)}

    def test_digon_plus_isolated_folds_to_digon(self):
        # identify(digon [0,1] plus isolated 2, {{0,2}}): arc folding keeps
        # exactly the digon, now on 2 vertices.
        d = Digraph(3, [(0, 1), (1, 0)])
        folded, mapping = identify(d, [{0, 2}])
        assert folded.n == 2
        assert folded.arcs == {(mapping[0], mapping[1]), (mapping[1], mapping[0])}

    def test_overlap_rejected(self, k4):
        with pytest.raises(DigraphError):
            identify(k4, [{0, 1}, {1, 2}])

    @settings(max_examples=60)
    @given(digraphs())
    def test_singleton_blocks_always_identity(self, d):
        same, _ = identify(d, [{v} for v in range(d.n)])
        assert same == d


class TestConnectivity:
    def test_k4_three_connected(self, k4):
        assert is_k_connected(k4, 3) == (True, None)

    def test_path_cut_vertex(self):
        ok, cut = is_k_connected(bidirected_path(3), 2)
        assert not ok and cut == {1}

    def test_c5_two_not_three(self, c5_bi):
        assert is_k_connected(c5_bi, 2)[0]
        ok, cut = is_k_connected(c5_bi, 3)
        assert not ok and len(cut) == 2

    def test_too_small_rejected(self, k3):
        with pytest.raises(DigraphError):
            is_k_connected(k3, 3)
