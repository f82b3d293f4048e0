"""Immutable digraphs and the structural primitives everything else consumes.

Vertices are dense integers ``0..n-1``.  Arcs are ordered pairs ``(u, v)``
with ``u != v``; a digon is a pair of opposite arcs.  Values never mutate:
every edit returns a fresh digraph, and operations that move vertices
(induced subdigraphs, identification) also return the relabelling map so
provenance survives composition.

The interchange format is DG-v1::

    # optional comment lines
    n <N> m <M>
    <u> <v>            (M arc lines, 0-based ids)

Canonical serialization lists arcs in lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable


class DigraphError(ValueError):
    """Invalid digraph construction or operation input."""


class ParseError(DigraphError):
    """DG-v1 text that does not describe a digraph; carries the line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Digraph:
    """A loopless digraph on vertices ``0..n-1`` with a frozen arc set.

    Empty digraphs (n = 0) are rejected everywhere.  Instances are hashable
    and safe to share between threads.
    """

    __slots__ = ("n", "arcs", "_out", "_in", "_hash")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise DigraphError("digraphs must have at least one vertex")
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for arc in arcs:
            u, v = arc
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise DigraphError(f"self-loop at vertex {u}")
            if (u, v) in seen:
                raise DigraphError(f"duplicate arc ({u}, {v})")
            seen.add((u, v))
            out[u].append(v)
            inn[v].append(u)
        self.n = n
        self.arcs = frozenset(seen)
        self._out = tuple(tuple(sorted(s)) for s in out)
        self._in = tuple(tuple(sorted(s)) for s in inn)
        self._hash = hash((n, self.arcs))

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.arcs)

    def vertices(self) -> range:
        return range(self.n)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_neighbours(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbours(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def neighbours(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(set(self._out[v]) | set(self._in[v])))

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def degree(self, v: int) -> int:
        return len(self._out[v]) + len(self._in[v])

    # -- digons ----------------------------------------------------------

    def has_digon(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs and (v, u) in self.arcs

    def digons(self) -> list[tuple[int, int]]:
        """All digons as pairs (u, v) with u < v, in lexicographic order."""
        return sorted(
            (u, v) for (u, v) in self.arcs if u < v and (v, u) in self.arcs
        )

    def digon_count_at(self, v: int) -> int:
        return sum(1 for u in self._out[v] if (u, v) in self.arcs)

    def is_bidirected(self) -> bool:
        return all((v, u) in self.arcs for (u, v) in self.arcs)

    def is_oriented(self) -> bool:
        return not any((v, u) in self.arcs for (u, v) in self.arcs)

    def underlying_edges(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for (u, v) in self.arcs}

    # -- builders (every edit returns a new value) -----------------------

    def with_arcs(self, extra: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph(self.n, set(self.arcs) | set(extra))

    def without_arcs(self, removed: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph(self.n, set(self.arcs) - set(removed))

    def without_digon(self, u: int, v: int) -> "Digraph":
        if not self.has_digon(u, v):
            raise DigraphError(f"[{u},{v}] is not a digon")
        return self.without_arcs([(u, v), (v, u)])

    def reverse(self) -> "Digraph":
        return Digraph(self.n, ((v, u) for (u, v) in self.arcs))

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


# -- standard digraphs ----------------------------------------------------


def bidirected_complete(n: int) -> Digraph:
    return Digraph(n, ((u, v) for u in range(n) for v in range(n) if u != v))


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise DigraphError("a directed cycle needs at least two vertices")
    return Digraph(n, ((i, (i + 1) % n) for i in range(n)))


def bidirected_cycle(n: int) -> Digraph:
    if n < 3:
        raise DigraphError("a bidirected cycle needs at least three vertices")
    arcs = []
    for i in range(n):
        arcs.append((i, (i + 1) % n))
        arcs.append(((i + 1) % n, i))
    return Digraph(n, arcs)


def bidirected_path(n: int) -> Digraph:
    arcs = []
    for i in range(n - 1):
        arcs.append((i, i + 1))
        arcs.append((i + 1, i))
    return Digraph(n, arcs)


def bidirected_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
    arcs = []
    for u, v in edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(n, arcs)


# -- DG-v1 parsing / serialization ----------------------------------------


def parse(text: str) -> Digraph:
    """Parse a DG-v1 string; every error carries its 1-based line number."""
    header = None
    header_line = 0
    arcs: list[tuple[int, int]] = []
    n = m = 0
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "n" or parts[2] != "m":
                raise ParseError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[1]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed header {line!r}", lineno) from None
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
            if m < 0:
                raise ParseError("arc count must be non-negative", lineno)
            header = (n, m)
            header_line = lineno
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected an arc line, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected an arc line, got {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range in arc ({u}, {v})", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate arc ({u}, {v})", lineno)
        seen.add((u, v))
        arcs.append((u, v))
        if len(arcs) > m:
            raise ParseError(f"more than the {m} arcs announced in the header", lineno)
    if header is None:
        raise ParseError("missing header", 1)
    if len(arcs) != m:
        raise ParseError(
            f"header announced {m} arcs but {len(arcs)} were given", header_line
        )
    return Digraph(n, arcs)


def serialize(d: Digraph) -> str:
    """Canonical DG-v1 text: header, then arcs in lexicographic order."""
    lines = [f"n {d.n} m {d.m}"]
    lines.extend(f"{u} {v}" for u, v in d.sorted_arcs())
    return "\n".join(lines) + "\n"


# -- vertex profiles -------------------------------------------------------


@dataclass(frozen=True)
class VertexProfile:
    """Degree data for one vertex; d(v) = n(v) + number of digons at v."""

    vertex: int
    in_degree: int
    out_degree: int
    degree: int
    neighbour_count: int
    simple_neighbours: tuple[int, ...]


def profiles(d: Digraph) -> list[VertexProfile]:
    result = []
    for v in d.vertices():
        nbrs = d.neighbours(v)
        simple = tuple(u for u in nbrs if not d.has_digon(u, v))
        result.append(
            VertexProfile(
                vertex=v,
                in_degree=d.in_degree(v),
                out_degree=d.out_degree(v),
                degree=d.degree(v),
                neighbour_count=len(nbrs),
                simple_neighbours=simple,
            )
        )
    return result


# -- subdigraphs, boundaries, identification -------------------------------


def induced(d: Digraph, subset: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """The subdigraph induced by ``subset``, relabelled 0..|S|-1 in order.

    Returns the digraph together with the old-id -> new-id map.
    """
    vs = sorted(set(subset))
    if not vs:
        raise DigraphError("cannot induce on an empty vertex set")
    if vs[0] < 0 or vs[-1] >= d.n:
        raise DigraphError("subset contains vertices outside the digraph")
    mapping = {v: i for i, v in enumerate(vs)}
    arcs = [
        (mapping[u], mapping[v])
        for (u, v) in d.arcs
        if u in mapping and v in mapping
    ]
    return Digraph(len(vs), arcs), mapping


def boundary(d: Digraph, subset: Iterable[int]) -> frozenset[int]:
    """Vertices of R with at least one in- or out-neighbour outside R."""
    r = set(subset)
    if not r:
        raise DigraphError("boundary of an empty set is undefined")
    if not r.issubset(range(d.n)):
        raise DigraphError("subset contains vertices outside the digraph")
    if len(r) == d.n:
        raise DigraphError("boundary of the whole vertex set is undefined")
    return frozenset(
        v for v in r if any(u not in r for u in d.neighbours(v))
    )


def identify(
    d: Digraph, blocks: Iterable[Iterable[int]]
) -> tuple[Digraph, dict[int, int]]:
    """Collapse each block to a single vertex, dropping intra-block arcs.

    Vertices not covered by any block keep their identity as singleton
    blocks.  The new vertices are ordered by the minimum original id in
    each block; the old-id -> new-id map is returned alongside.
    """
    block_sets = [sorted(set(b)) for b in blocks]
    covered: set[int] = set()
    for b in block_sets:
        if not b:
            raise DigraphError("blocks must be non-empty")
        if b[0] < 0 or b[-1] >= d.n:
            raise DigraphError("block contains vertices outside the digraph")
        if covered & set(b):
            raise DigraphError("blocks must be disjoint")
        covered.update(b)
    parts = block_sets + [[v] for v in d.vertices() if v not in covered]
    parts.sort(key=lambda b: b[0])
    mapping: dict[int, int] = {}
    for i, part in enumerate(parts):
        for v in part:
            mapping[v] = i
    arcs = {
        (mapping[u], mapping[v]) for (u, v) in d.arcs if mapping[u] != mapping[v]
    }
    return Digraph(len(parts), arcs), mapping


# -- connectivity ----------------------------------------------------------


def _underlying_adjacency(d: Digraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(d.n)]
    for u, v in d.arcs:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def underlying_components(
    d: Digraph, removed: Iterable[int] = ()
) -> list[frozenset[int]]:
    """Connected components of the underlying graph after vertex removal."""
    gone = set(removed)
    adj = _underlying_adjacency(d)
    seen: set[int] = set(gone)
    comps = []
    for start in d.vertices():
        if start in seen:
            continue
        stack = [start]
        comp = set()
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.add(v)
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(frozenset(comp))
    return comps


def is_underlying_connected(d: Digraph, removed: Iterable[int] = ()) -> bool:
    gone = set(removed)
    if len(gone) >= d.n:
        return True
    return len(underlying_components(d, gone)) == 1


def is_k_connected(d: Digraph, k: int) -> tuple[bool, frozenset[int] | None]:
    """Underlying-graph k-connectivity by exhaustive cutset enumeration.

    Only k = 2 and k = 3 are supported (desk scale).  Returns the verdict
    and, when false, a witness (k-1)-cutset.
    """
    if k not in (2, 3):
        raise DigraphError("only 2- and 3-connectivity are supported")
    if d.n <= k:
        raise DigraphError(f"{k}-connectivity needs more than {k} vertices")
    for cut in itertools.combinations(d.vertices(), k - 1):
        if not is_underlying_connected(d, cut):
            return False, frozenset(cut)
    return True, None
