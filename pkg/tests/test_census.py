import pytest

from dicrit.census import census, load_record, save_records
from dicrit.colouring import is_k_dicritical
from dicrit.digraph import DigraphError, directed_cycle, serialize
from dicrit.iso import are_isomorphic


class TestCensus:
    def test_k2_minima_are_directed_cycles(self):
        table = census(2, 4)
        for n in (2, 3, 4):
            assert table.d_min[n] == n
            assert any(
                are_isomorphic(rec.digraph, directed_cycle(n))
                for rec in table.witnesses[n]
            )
        assert table.o_min[2] is None  # the only 2-dicritical digraph is a digon
        assert table.o_min[3] == 3

    def test_k3_n3(self):
        table = census(3, 3)
        assert table.d_min[3] == 6
        assert table.d_min[2] is None
        rec = table.witnesses[3][0]
        assert rec.digraph.is_bidirected() and rec.digraph.m == 6

    def test_k4_n4(self):
        table = census(4, 4)
        assert table.d_min[4] == 12
        assert table.d_min[3] is None
        assert table.o_min[4] is None

    def test_sharding_agrees(self):
        assert census(2, 3, nshards=3).to_json() == census(2, 3).to_json()

    def test_bounds_validated(self):
        with pytest.raises(DigraphError):
            census(2, 6)
        with pytest.raises(DigraphError):
            census(1, 3)


class TestPersistence:
    def test_roundtrip_and_reverify(self, tmp_path):
        table = census(3, 3)
        paths = save_records(table.witnesses[3], tmp_path)
        assert paths
        rec = load_record(paths[0])
        assert rec.verified_dicritical
        assert is_k_dicritical(rec.digraph, 3).verdict

    def test_stale_record_rejected(self, tmp_path):
        table = census(2, 3)
        paths = save_records(table.witnesses[3], tmp_path)
        # corrupt the blob: a path is not 2-dicritical
        paths[0].write_text("n 3 m 2\n0 1\n1 2\n")
        with pytest.raises(DigraphError):
            load_record(paths[0])
