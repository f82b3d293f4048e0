"""Tiny-n census of the minimum arc counts of k-dicritical digraphs.

For each order n the census scans arc counts upward, enumerating all arc
sets of that size (optionally sharded), and tests k-dicriticality exactly.
The scan starts at m = n(k-1): every vertex of a k-dicritical digraph has
in- and out-degree at least k-1, so nothing below that can qualify.  The
verdicts themselves never rely on the bound.

Witnesses found at the minimum are deduplicated by exhaustive permutation
canonicalization (at n <= 5 that is at most 120 permutations) and persisted
as one canonical DG-v1 blob plus a JSON sidecar per record; records
re-verify on load.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

from .budget import Budget, ensure_budget
from .colouring import is_k_dicritical
from .digraph import Digraph, DigraphError, parse, serialize
from .iso import canonical_form

MAX_CENSUS_N = 5


@dataclass(frozen=True)
class CensusRecord:
    n: int
    k: int
    digraph: Digraph
    arc_count: int
    oriented: bool
    verified_dicritical: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "arc_count": self.arc_count,
            "oriented": self.oriented,
            "verified_dicritical": self.verified_dicritical,
        }


@dataclass
class CensusTable:
    k: int
    d_min: dict[int, int | None]  # n -> d_k(n), None when no witness exists
    o_min: dict[int, int | None]  # n -> o_k(n) over oriented graphs
    witnesses: dict[int, list[CensusRecord]]
    oriented_witnesses: dict[int, list[CensusRecord]]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "d": {str(n): v for n, v in sorted(self.d_min.items())},
            "o": {str(n): v for n, v in sorted(self.o_min.items())},
        }


def _candidate_arc_sets(n: int, m: int, oriented_only: bool):
    if oriented_only:
        # Choose m undirected pairs, then orient each; never builds a digon.
        pairs = list(itertools.combinations(range(n), 2))
        for chosen in itertools.combinations(pairs, m):
            for mask in range(1 << m):
                yield frozenset(
                    (v, u) if (mask >> i) & 1 else (u, v)
                    for i, (u, v) in enumerate(chosen)
                )
    else:
        all_arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
        for combo in itertools.combinations(all_arcs, m):
            yield frozenset(combo)


def _scan_arc_sets(
    n: int,
    m: int,
    k: int,
    budget: Budget,
    oriented_only: bool,
    shard: int = 0,
    nshards: int = 1,
):
    """One shard of the size-m arc-set enumeration; yields the k-dicritical
    digraphs found.  A pure function of its arguments, so shards can run
    anywhere and be merged by concatenation."""
    for idx, arcs in enumerate(_candidate_arc_sets(n, m, oriented_only)):
        if idx % nshards != shard:
            continue
        # Quick degree filter; the full check never relies on it.
        outdeg = [0] * n
        indeg = [0] * n
        for u, v in arcs:
            outdeg[u] += 1
            indeg[v] += 1
        if any(outdeg[v] < k - 1 or indeg[v] < k - 1 for v in range(n)):
            continue
        d = Digraph(n, arcs)
        if is_k_dicritical(d, k, budget).verdict:
            yield d


def _dedupe(found: list[Digraph]) -> list[Digraph]:
    seen = set()
    unique = []
    for d in found:
        key = canonical_form(d)
        if key not in seen:
            seen.add(key)
            unique.append(d)
    return unique


def _minimum_for(
    n: int, k: int, budget: Budget, oriented_only: bool, nshards: int
) -> tuple[int | None, list[Digraph]]:
    max_m = n * (n - 1) // (2 if oriented_only else 1)
    for m in range(max(1, n * (k - 1)), max_m + 1):
        found: list[Digraph] = []
        for shard in range(nshards):
            found.extend(
                _scan_arc_sets(n, m, k, budget, oriented_only, shard, nshards)
            )
        if found:
            return m, _dedupe(found)
    return None, []


def census(
    k: int,
    n_max: int,
    budget: Budget | int | None = None,
    nshards: int = 1,
) -> CensusTable:
    """Exact d_k(n) and o_k(n) for 2 <= n <= n_max (n_max at most 5)."""
    if not 2 <= n_max <= MAX_CENSUS_N:
        raise DigraphError(f"census supports 2 <= n_max <= {MAX_CENSUS_N}")
    if k < 2:
        raise DigraphError("census needs k >= 2")
    budget = ensure_budget(budget, 50_000_000, "census")
    table = CensusTable(k, {}, {}, {}, {})
    for n in range(2, n_max + 1):
        d_min, d_wit = _minimum_for(n, k, budget, oriented_only=False, nshards=nshards)
        o_min, o_wit = _minimum_for(n, k, budget, oriented_only=True, nshards=nshards)
        table.d_min[n] = d_min
        table.o_min[n] = o_min
        table.witnesses[n] = [
            CensusRecord(n, k, w, w.m, w.is_oriented(), True) for w in d_wit
        ]
        table.oriented_witnesses[n] = [
            CensusRecord(n, k, w, w.m, w.is_oriented(), True) for w in o_wit
        ]
    return table


# -- persistence ---------------------------------------------------------------


def save_records(records: list[CensusRecord], directory: str | Path) -> list[Path]:
    """One canonical DG-v1 blob plus a JSON sidecar per record."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, rec in enumerate(records):
        stem = f"census_k{rec.k}_n{rec.n}_{i:03d}"
        blob = directory / f"{stem}.dg"
        sidecar = directory / f"{stem}.json"
        blob.write_text(serialize(rec.digraph))
        sidecar.write_text(json.dumps(rec.to_json(), indent=2) + "\n")
        paths.append(blob)
    return paths


def load_record(
    blob_path: str | Path, budget: Budget | int | None = None
) -> CensusRecord:
    """Load one record and re-verify its dicriticality (no stale corpus)."""
    blob_path = Path(blob_path)
    sidecar = blob_path.with_suffix(".json")
    meta = json.loads(sidecar.read_text())
    d = parse(blob_path.read_text())
    report = is_k_dicritical(d, meta["k"], budget)
    if not report.verdict:
        raise DigraphError(
            f"{blob_path}: stored digraph no longer verifies as "
            f"{meta['k']}-dicritical ({report.failure_reason})"
        )
    return CensusRecord(
        n=d.n,
        k=meta["k"],
        digraph=d,
        arc_count=d.m,
        oriented=d.is_oriented(),
        verified_dicritical=True,
    )
