"""Graph and multigraph values plus the structural primitives used everywhere else.

Graphs are immutable after construction. Derived graphs (cores, induced
subgraphs, deletions) keep the original vertex ids, so certificates and
traces always refer to the caller's graph even when the id space becomes
sparse.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Iterable, Mapping, Sequence


class Graph:
    """Simple undirected graph: no loops, no parallel edges.

    Adjacency is kept as sorted tuples per vertex; every operation on the
    graph returns new values and never mutates existing ones.
    """

    __slots__ = ("_adj", "_sets", "_m")

    def __init__(self, adjacency: Mapping[int, Iterable[int]], _trusted: bool = False):
        if _trusted:
            self._adj = dict(adjacency)  # values must already be sorted tuples
        else:
            adj = {}
            for v, nbrs in adjacency.items():
                adj[int(v)] = tuple(sorted(set(int(w) for w in nbrs)))
            for v, nbrs in adj.items():
                for w in nbrs:
                    if w == v:
                        raise ValueError(f"self-loop at vertex {v}")
                    if w not in adj:
                        raise ValueError(f"neighbor {w} of {v} is not a vertex")
                    if v not in adj[w]:
                        raise ValueError(f"asymmetric adjacency between {v} and {w}")
            self._adj = adj
        self._sets = {v: frozenset(nbrs) for v, nbrs in self._adj.items()}
        self._m = sum(len(nbrs) for nbrs in self._adj.values()) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Graph on vertices 0..n-1 with the given (undirected) edges."""
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: dict[int, set[int]] = {v: set() for v in range(n)}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls({v: tuple(sorted(ws)) for v, ws in adj.items()}, _trusted=True)

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._adj))

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._sets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted."""
        return [(u, w) for u in sorted(self._adj) for w in self._adj[u] if u < w]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._sets[v] | {v}

    # -- derived graphs (original ids kept) ----------------------------------

    def induced_subgraph(self, keep: Iterable[int]) -> "Graph":
        keep_set = set(keep)
        unknown = keep_set - self._adj.keys()
        if unknown:
            raise ValueError(f"unknown vertices: {sorted(unknown)}")
        adj = {
            v: tuple(w for w in self._adj[v] if w in keep_set) for v in sorted(keep_set)
        }
        return Graph(adj, _trusted=True)

    def delete_vertices(self, remove: Iterable[int]) -> "Graph":
        remove_set = set(remove)
        return self.induced_subgraph(v for v in self._adj if v not in remove_set)

    # -- connectivity ---------------------------------------------------------

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, ordered by minimum id."""
        seen: set[int] = set()
        out = []
        for start in sorted(self._adj):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(tuple(sorted(comp)))
        return out

    def component_count(self) -> int:
        return len(self.components())

    # -- value semantics ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(tuple(sorted((v, nbrs) for v, nbrs in self._adj.items())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class MultiGraph:
    """Undirected multigraph: loops and parallel edges allowed.

    Produced by degree-2 suppression; vertex ids are original graph ids.
    """

    __slots__ = ("_vertices", "_edges")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        self._vertices = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(self._vertices)
        norm = []
        for u, v in edges:
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) uses an unknown vertex")
            norm.append((u, v) if u <= v else (v, u))
        self._edges = tuple(sorted(norm))

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def multiplicity(self) -> Counter:
        """Edge multiset as a Counter over normalized (u, v) pairs."""
        return Counter(self._edges)

    def loops(self) -> list[int]:
        return sorted(u for u, v in self._edges if u == v)

    def component_count(self) -> int:
        adj: dict[int, set[int]] = {v: set() for v in self._vertices}
        for u, v in self._edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        seen: set[int] = set()
        count = 0
        for start in self._vertices:
            if start in seen:
                continue
            count += 1
            stack = [start]
            seen.add(start)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return count

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiGraph)
            and self._vertices == other._vertices
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ReductionTrace:
    """Ordered log of the degree-0/1 deletions that produced a core."""

    removed: tuple[tuple[int, str], ...]

    def replay(self, g: Graph) -> Graph:
        """Apply the recorded removals to ``g``; reproduces the core."""
        return g.delete_vertices(v for v, _ in self.removed)


def cycle_rank(g: Graph | MultiGraph) -> int:
    """Number of edges whose deletion turns the graph into a forest.

    Equals m - n + c with c the number of connected components. Zero exactly
    for forests. For multigraphs a loop and each extra parallel edge count as
    independent cycles.
    """
    return g.m - g.n + g.component_count()


def core(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Iteratively delete degree-0/1 vertices; lowest id first.

    The result has minimum degree >= 2 (or is empty), keeps original ids and
    has the same cycle rank as ``g``.
    """
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(deg)
    heap = [v for v in sorted(deg) if deg[v] <= 1]
    heapq.heapify(heap)
    removed: list[tuple[int, str]] = []
    while heap:
        v = heapq.heappop(heap)
        if v not in alive or deg[v] > 1:
            continue
        removed.append((v, "degree0" if deg[v] == 0 else "degree1"))
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1:
                    heapq.heappush(heap, w)
    return g.induced_subgraph(alive), ReductionTrace(tuple(removed))


def average_degree(g: Graph) -> Fraction:
    """Exact rational 2m/n; rejects the empty graph."""
    if g.n == 0:
        raise ValueError("average degree is undefined for the empty graph")
    return Fraction(2 * g.m, g.n)


# -- girth and shortest cycles ------------------------------------------------
#
# Both run BFS from every core vertex. Expansion is cut off at depth
# (best-1)//2: any cycle shorter than the current best lies entirely within
# that radius of each of its vertices, so the cutoff never loses the optimum
# while keeping the scanned balls small once a short cycle is known.


def _index_core(g: Graph):
    """Compact adjacency over the core of ``g`` for the BFS scans."""
    reduced, _ = core(g)
    ids = list(reduced.vertices)
    pos = {v: i for i, v in enumerate(ids)}
    adj = [[pos[w] for w in reduced.neighbors(v)] for v in ids]
    return ids, adj


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    ids, adj = _index_core(g)
    n = len(ids)
    if n == 0:
        return inf
    best = inf
    dist = [-1] * n
    parent = [-1] * n
    touched: list[int] = []
    for r in range(n):
        if best == 3:
            break
        cutoff = n if best is inf else (best - 1) // 2
        dist[r] = 0
        parent[r] = -1
        touched.append(r)
        queue = [r]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            dx = dist[x]
            if dx > cutoff:
                break
            px = parent[x]
            for y in adj[x]:
                dy = dist[y]
                if dy < 0:
                    if dx < cutoff:
                        dist[y] = dx + 1
                        parent[y] = x
                        touched.append(y)
                        queue.append(y)
                elif y != px and parent[y] != x:
                    cand = dx + dy + 1
                    if cand < best:
                        best = cand
                        cutoff = (best - 1) // 2
        for v in touched:
            dist[v] = -1
        touched.clear()
    return best


def shortest_cycle(g: Graph) -> list[int] | None:
    """A shortest cycle as a vertex sequence, or None for forests.

    Deterministic: the cycle starts at the lowest vertex id lying on any
    shortest cycle and is the lexicographically smallest sequence available
    from that vertex's BFS tree.
    """
    best = girth(g)
    if best is inf:
        return None
    ids, adj = _index_core(g)
    n = len(ids)
    dist = [-1] * n
    parent = [-1] * n
    touched: list[int] = []
    cutoff = best // 2
    for r in range(n):
        dist[r] = 0
        parent[r] = -1
        touched.append(r)
        queue = [r]
        qi = 0
        candidates = []
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            dx = dist[x]
            px = parent[x]
            for y in adj[x]:
                dy = dist[y]
                if dy < 0:
                    if dx < cutoff:
                        dist[y] = dx + 1
                        parent[y] = x
                        touched.append(y)
                        queue.append(y)
                elif y != px and parent[y] != x:
                    if dx + dy + 1 == best:
                        candidates.append((x, y))
        result = None
        if candidates:
            for x, y in candidates:
                seq = _cycle_sequence(ids, parent, x, y)
                if seq is not None and (result is None or seq < result):
                    result = seq
        for v in touched:
            dist[v] = -1
        touched.clear()
        if result is not None:
            return result
    raise AssertionError("girth is finite but no shortest cycle was extracted")


def _cycle_sequence(ids, parent, x, y) -> list[int] | None:
    """Cycle [root..x, y..] from two BFS tree paths; None if paths remeet."""
    px = [x]
    while parent[px[-1]] != -1:
        px.append(parent[px[-1]])
    px.reverse()
    py = [y]
    while parent[py[-1]] != -1:
        py.append(parent[py[-1]])
    py.reverse()
    seq = px + py[:0:-1]
    if len(set(seq)) != len(seq):
        return None
    return [ids[i] for i in seq]


def suppress_degree_two(g: Graph) -> MultiGraph:
    """Replace maximal paths with degree-2 interiors by single multigraph edges.

    Retained vertices are exactly those with degree != 2, except that a
    connected component which is a bare cycle keeps its lowest vertex and
    turns into a loop on it. Cycle rank is preserved.
    """
    retained = [v for v in g.vertices if g.degree(v) != 2]
    retained_set = set(retained)
    edges: list[tuple[int, int]] = []
    walked: set[tuple[int, int]] = set()

    for u in retained:
        for w in g.neighbors(u):
            if (u, w) in walked:
                continue
            walked.add((u, w))
            prev, cur = u, w
            while cur not in retained_set:
                step = next(z for z in g.neighbors(cur) if z != prev)
                prev, cur = cur, step
            walked.add((cur, prev))  # blocks re-walking from the far end
            edges.append((u, cur))

    # a component with no retained vertex is a bare cycle; keep its lowest
    # vertex carrying a loop so that cycle rank is preserved
    loop_vertices = []
    for comp in g.components():
        if not any(v in retained_set for v in comp):
            loop_vertices.append(comp[0])
            edges.append((comp[0], comp[0]))

    return MultiGraph(retained + loop_vertices, edges)
