"""Isomorphism testing and canonical forms for desk-scale digraphs.

Two tools, both exact:

* :func:`canonical_form` minimises the relabelled arc list over all
  permutations.  Exhaustive up to ``EXHAUSTIVE_N`` vertices; beyond that it
  refuses (callers must fall back to invariant keys plus explicit
  isomorphism checks).
* :func:`find_isomorphism` backtracks over vertex images, pruning with
  degree/digon invariants.  Fine for the n <= 13 digraphs this package
  handles.
"""

from __future__ import annotations

import itertools

from .digraph import Digraph

EXHAUSTIVE_N = 7


def invariant_key(d: Digraph) -> tuple:
    """A cheap isomorphism invariant usable as a memo bucket key."""
    degs = sorted((d.out_degree(v), d.in_degree(v), d.digon_count_at(v))
                  for v in d.vertices())
    return (d.n, d.m, tuple(degs))


def canonical_form(d: Digraph) -> tuple[tuple[int, int], ...]:
    """Lexicographically minimal arc tuple over all vertex permutations."""
    if d.n > EXHAUSTIVE_N:
        raise ValueError(
            f"exhaustive canonicalization capped at n={EXHAUSTIVE_N}"
        )
    arcs = list(d.arcs)
    best = None
    for perm in itertools.permutations(range(d.n)):
        relabelled = tuple(sorted((perm[u], perm[v]) for (u, v) in arcs))
        if best is None or relabelled < best:
            best = relabelled
    return best if best is not None else ()


def _vertex_invariant(d: Digraph, v: int) -> tuple:
    return (d.out_degree(v), d.in_degree(v), d.digon_count_at(v))


def find_isomorphism(a: Digraph, b: Digraph) -> dict[int, int] | None:
    """A bijection V(a) -> V(b) preserving arcs exactly, or None."""
    if a.n != b.n or a.m != b.m:
        return None
    inv_a = [_vertex_invariant(a, v) for v in a.vertices()]
    inv_b = [_vertex_invariant(b, v) for v in b.vertices()]
    if sorted(inv_a) != sorted(inv_b):
        return None

    # Most constrained first: rare invariants early, then high degree.
    freq: dict[tuple, int] = {}
    for key in inv_a:
        freq[key] = freq.get(key, 0) + 1
    order = sorted(a.vertices(), key=lambda v: (freq[inv_a[v]], -a.degree(v), v))

    candidates = [
        [w for w in b.vertices() if inv_b[w] == inv_a[v]] for v in a.vertices()
    ]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        for v2, w2 in mapping.items():
            if a.has_arc(v, v2) != b.has_arc(w, w2):
                return False
            if a.has_arc(v2, v) != b.has_arc(w2, w):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


def are_isomorphic(a: Digraph, b: Digraph) -> bool:
    return find_isomorphism(a, b) is not None
