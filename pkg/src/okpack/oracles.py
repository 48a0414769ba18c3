"""Brute-force reference implementations, deliberately independent from the
algorithms they cross-check. Hard size caps fail loudly."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from okpack.errors import TooLarge
from okpack.generators import MinorCertificate
from okpack.graphcore import Graph, core, cycle_rank
from okpack.detectors import PackingWitness
from okpack.solvers import ColoringAssignment

_MIS_MAX_N = 24
_COLOR_MAX_N = 20
_FVS_MAX_N = 20
_FVS_MAX_RANK = 12
_TW_MAX_N = 20
_CYCLES_MAX_N = 12
_CYCLES_HARD_CAP = 500_000


# -- maximum independent set ------------------------------------------------------


def _mis_size(adj: dict[int, frozenset[int]]) -> int:
    """Branch and bound with degree pivoting; degree <= 1 vertices are safe."""
    count = 0
    adj = dict(adj)
    while adj:
        simple = min(
            (v for v in adj if len(adj[v]) <= 1), default=None
        )
        if simple is None:
            break
        count += 1
        dead = adj[simple] | {simple}
        for w in dead:
            adj.pop(w, None)
        for v in list(adj):
            adj[v] = adj[v] - dead
    if not adj:
        return count
    pivot = min(adj, key=lambda v: (-len(adj[v]), v))

    def without(victims: frozenset[int]) -> dict[int, frozenset[int]]:
        return {v: adj[v] - victims for v in adj if v not in victims}

    include = 1 + _mis_size(without(adj[pivot] | {pivot}))
    exclude = _mis_size(without(frozenset((pivot,))))
    return count + max(include, exclude)


def brute_mis(g: Graph) -> tuple[int, ...]:
    """The lexicographically least maximum independent set."""
    if g.n > _MIS_MAX_N:
        raise TooLarge(f"brute_mis caps at n = {_MIS_MAX_N}, got {g.n}")
    adj = {v: g.neighbor_set(v) for v in g.vertices}
    size = _mis_size(adj)
    chosen: list[int] = []
    remaining = adj
    while size > 0:
        for v in sorted(remaining):
            victims = remaining[v] | {v}
            sub = {u: remaining[u] - victims for u in remaining if u not in victims}
            if 1 + _mis_size(sub) == size:
                chosen.append(v)
                remaining = sub
                size -= 1
                break
        else:
            raise AssertionError("no extendable vertex found at a positive size")
    return tuple(chosen)


# -- colorings ---------------------------------------------------------------------


def brute_3color(
    g: Graph, lists: Mapping[int, Iterable[int]] | None = None
) -> ColoringAssignment | None:
    """Exhaustive backtracking 3-coloring, optionally list-constrained."""
    if g.n > _COLOR_MAX_N:
        raise TooLarge(f"brute_3color caps at n = {_COLOR_MAX_N}, got {g.n}")
    verts = g.vertices
    if lists is None:
        allowed = {v: (1, 2, 3) for v in verts}
    else:
        allowed = {v: tuple(sorted(set(lists[v]) & {1, 2, 3})) for v in verts}
    colors: dict[int, int] = {}

    def backtrack(i: int) -> bool:
        if i == len(verts):
            return True
        v = verts[i]
        for c in allowed[v]:
            if all(colors.get(u) != c for u in g.neighbors(v)):
                colors[v] = c
                if backtrack(i + 1):
                    return True
                del colors[v]
        return False

    if backtrack(0):
        return ColoringAssignment.from_dict(colors)
    return None


# -- minimum feedback vertex set -----------------------------------------------------


def brute_fvs(g: Graph) -> tuple[int, ...]:
    """Minimum FVS by iterative deepening over subset sizes.

    Searches subsets of the core only, since minimal feedback vertex sets of
    a graph and of its core coincide.
    """
    rank = cycle_rank(g)
    if g.n > _FVS_MAX_N and rank > _FVS_MAX_RANK:
        raise TooLarge(
            f"brute_fvs caps at n = {_FVS_MAX_N} or cycle rank {_FVS_MAX_RANK}"
        )
    reduced, _ = core(g)
    verts = reduced.vertices
    for size in range(rank + 1):
        for candidate in combinations(verts, size):
            if cycle_rank(reduced.delete_vertices(candidate)) == 0:
                return tuple(candidate)
    raise AssertionError("deleting all core vertices always yields a forest")


# -- treewidth -------------------------------------------------------------------------


def _eliminate(adj: dict[int, set[int]], v: int) -> None:
    nbrs = adj.pop(v)
    for a in nbrs:
        adj[a].discard(v)
    for a in nbrs:
        for b in nbrs:
            if a < b:
                adj[a].add(b)
                adj[b].add(a)


def _tw_reductions(adj: dict[int, set[int]], w: int) -> None:
    """Safe forced eliminations for the decision width w >= 2: degree <= 2
    vertices always, simplicial vertices of degree <= w."""
    while True:
        low = sorted(v for v in adj if len(adj[v]) <= 2)
        if low:
            _eliminate(adj, low[0])
            continue
        simplicial = None
        for v in sorted(adj):
            if len(adj[v]) <= w:
                nbrs = sorted(adj[v])
                if all(
                    b in adj[a] for a, b in combinations(nbrs, 2)
                ):
                    simplicial = v
                    break
        if simplicial is None:
            return
        _eliminate(adj, simplicial)


def _tw_at_most(g: Graph, w: int) -> bool:
    """Decision: does some elimination ordering keep every fill degree <= w?

    Memoized DFS over remaining vertex sets; the fill graph is a function of
    the eliminated set, so the memo key is sound.
    """
    if g.n <= w + 1:
        return True
    if w == 0:
        return g.m == 0
    if w == 1:
        return cycle_rank(g) == 0
    start = {v: set(g.neighbor_set(v)) for v in g.vertices}
    failed: set[frozenset[int]] = set()

    def rec(adj: dict[int, set[int]]) -> bool:
        _tw_reductions(adj, w)
        if len(adj) <= w + 1:
            return True
        key = frozenset(adj)
        if key in failed:
            return False
        candidates = sorted(v for v in adj if len(adj[v]) <= w)
        for v in candidates:
            nxt = {u: set(s) for u, s in adj.items()}
            _eliminate(nxt, v)
            if rec(nxt):
                return True
        failed.add(key)
        return False

    return rec(start)


def brute_treewidth(g: Graph) -> int:
    """Exact treewidth via subset dynamic programming on elimination orders."""
    if g.n > _TW_MAX_N:
        raise TooLarge(f"brute_treewidth caps at n = {_TW_MAX_N}, got {g.n}")
    if g.n == 0:
        return -1
    for w in range(g.n):
        if _tw_at_most(g, w):
            return w
    raise AssertionError("treewidth of a nonempty graph is below its vertex count")


# -- minors ------------------------------------------------------------------------------


def verify_minor(g: Graph, cert: MinorCertificate) -> bool:
    """Check a branch-set model: disjoint connected sets, one host edge per
    target edge."""
    sets = [frozenset(s) for s in cert.branch_sets]
    all_vertices = set(g.vertices)
    for s in sets:
        if not s or not s <= all_vertices:
            return False
        if g.induced_subgraph(s).component_count() != 1:
            return False
    for a, b in combinations(range(len(sets)), 2):
        if sets[a] & sets[b]:
            return False
    for a, b in cert.target.edges():
        if a >= len(sets) or b >= len(sets):
            return False
        if not any(g.neighbor_set(u) & sets[b] for u in sets[a]):
            return False
    return True


# -- independent cycle search --------------------------------------------------------------


def _all_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every simple cycle (chords allowed), canonical orientation, once each."""
    cycles: list[tuple[int, ...]] = []
    for s in g.vertices:
        s_nbrs = g.neighbor_set(s)
        dfs = [((s, a), frozenset((s, a))) for a in sorted(s_nbrs, reverse=True) if a > s]
        while dfs:
            pth, used = dfs.pop()
            t = pth[-1]
            for w in g.neighbors(t):
                if w <= s or w in used:
                    continue
                if s in g.neighbor_set(w) and pth[1] < w:
                    cycles.append(pth + (w,))
                    if len(cycles) > _CYCLES_HARD_CAP:
                        raise TooLarge("cycle space too large to enumerate")
                dfs.append((pth + (w,), used | {w}))
    return cycles


def brute_independent_cycles(g: Graph, k: int) -> PackingWitness | None:
    """k pairwise independent cycles by direct search, or None.

    Exhausts all simple cycles (not only induced ones) and backtracks over
    the collection; intentionally a different strategy from the packing
    detectors.
    """
    if g.n > _CYCLES_MAX_N:
        raise TooLarge(f"brute_independent_cycles caps at n = {_CYCLES_MAX_N}")
    if k < 1:
        raise ValueError("k must be positive")
    cycles = _all_cycles(g)
    vsets = [frozenset(c) for c in cycles]
    closed = [
        vs | frozenset(w for v in vs for w in g.neighbor_set(v)) for vs in vsets
    ]

    def rec(start: int, chosen: list[int]) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        for i in range(start, len(cycles)):
            if all(vsets[i].isdisjoint(closed[j]) for j in chosen):
                found = rec(i + 1, chosen + [i])
                if found is not None:
                    return found
        return None

    found = rec(0, [])
    if found is None:
        return None
    return PackingWitness(tuple(cycles[i] for i in found))
