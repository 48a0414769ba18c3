"""Exact solvers modulated by a feedback vertex set.

With an FVS of size s, maximum independent set costs one forest DP per
independent subset of the FVS (at most 2^s of them) and q-coloring costs one
forest list-coloring DP per proper coloring of the FVS (at most q^s). At
s = O(log n) both are polynomial overall.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from okpack.errors import Budget, CapExceeded
from okpack.fvs import is_fvs
from okpack.graphcore import Graph, cycle_rank

NEG = float("-inf")


@dataclass(frozen=True)
class ColoringAssignment:
    """A vertex -> color map; colors are positive integers."""

    items: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, colors: Mapping[int, int]) -> "ColoringAssignment":
        return cls(tuple(sorted(colors.items())))

    @property
    def colors(self) -> dict[int, int]:
        return dict(self.items)

    def is_proper(self, g: Graph) -> bool:
        c = self.colors
        if set(c) != set(g.vertices):
            return False
        return all(c[u] != c[v] for u, v in g.edges())

    def respects(self, lists: Mapping[int, Iterable[int]]) -> bool:
        return all(color in set(lists[v]) for v, color in self.items)


def _rooted_order(g: Graph, root: int) -> tuple[list[int], dict[int, int]]:
    """DFS preorder and parent map of the tree component containing root."""
    order = [root]
    parent = {root: -1}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in parent:
                parent[y] = x
                order.append(y)
                stack.append(y)
    return order, parent


def forest_mis(g: Graph, forbidden: Iterable[int] = ()) -> tuple[int, ...]:
    """Maximum independent set of a forest avoiding ``forbidden`` vertices.

    Two-state tree DP; on ties the reconstruction prefers taking the vertex,
    which makes the output deterministic.
    """
    if cycle_rank(g) != 0:
        raise ValueError("input graph is not a forest")
    banned = set(forbidden)
    result: list[int] = []
    for comp in g.components():
        order, parent = _rooted_order(g, comp[0])
        take: dict[int, float] = {}
        skip: dict[int, float] = {}
        for v in reversed(order):
            children = [w for w in g.neighbors(v) if parent.get(w) == v]
            take[v] = (NEG if v in banned else 1) + sum(skip[c] for c in children)
            skip[v] = sum(max(take[c], skip[c]) for c in children)
        stack = [(comp[0], False)]
        while stack:
            v, must_skip = stack.pop()
            children = [w for w in g.neighbors(v) if parent.get(w) == v]
            if not must_skip and take[v] >= skip[v]:
                result.append(v)
                stack.extend((c, True) for c in children)
            else:
                stack.extend((c, False) for c in children)
    return tuple(sorted(result))


def forest_list_coloring(
    g: Graph, lists: Mapping[int, Iterable[int]]
) -> ColoringAssignment | None:
    """Proper coloring of a forest with per-vertex color lists, or None.

    Bottom-up feasibility sets per vertex, then top-down extraction taking
    the smallest feasible color.
    """
    if cycle_rank(g) != 0:
        raise ValueError("input graph is not a forest")
    lsets = {v: frozenset(lists.get(v, ())) for v in g.vertices}
    chosen: dict[int, int] = {}
    for comp in g.components():
        order, parent = _rooted_order(g, comp[0])
        feasible: dict[int, frozenset[int]] = {}
        for v in reversed(order):
            children = [w for w in g.neighbors(v) if parent.get(w) == v]
            feasible[v] = frozenset(
                c for c in lsets[v] if all(feasible[w] - {c} for w in children)
            )
        if not feasible[comp[0]]:
            return None
        stack = [(comp[0], 0)]
        while stack:
            v, banned_color = stack.pop()
            c = min(x for x in feasible[v] if x != banned_color)
            chosen[v] = c
            stack.extend(
                (w, c) for w in g.neighbors(v) if parent.get(w) == v
            )
    return ColoringAssignment.from_dict(chosen)


def _independent_subsets(g: Graph, xs: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All independent subsets of g[xs], in deterministic DFS order."""
    n = len(xs)

    def rec(i: int, current: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield current
            return
        v = xs[i]
        if all(not g.has_edge(v, u) for u in current):
            yield from rec(i + 1, current + (v,))
        yield from rec(i + 1, current)

    yield from rec(0, ())


def mis_via_fvs(g: Graph, x: Iterable[int], cap: int = 24) -> tuple[int, ...]:
    """Exact maximum independent set given a feedback vertex set ``x``.

    Enumerates independent subsets of g[x]; for each, the forest left after
    deleting x and the subset's neighbors is solved by tree DP. Deterministic:
    best by size, then lexicographically smallest.
    """
    xs = tuple(sorted(set(x)))
    if not is_fvs(g, xs):
        raise ValueError("x is not a feedback vertex set of the graph")
    if len(xs) > cap:
        raise CapExceeded("FVS subset enumeration", cap, len(xs))
    forest = g.delete_vertices(xs)
    forest_vertices = set(forest.vertices)
    best: tuple[int, ...] | None = None
    for subset in _independent_subsets(g, xs):
        blocked = set()
        for v in subset:
            blocked |= g.neighbor_set(v)
        tail = forest_mis(forest, forbidden=blocked & forest_vertices)
        candidate = tuple(sorted(subset + tail))
        if (
            best is None
            or len(candidate) > len(best)
            or (len(candidate) == len(best) and candidate < best)
        ):
            best = candidate
    assert best is not None
    return best


def min_vertex_cover_via_fvs(g: Graph, x: Iterable[int], cap: int = 24) -> tuple[int, ...]:
    """Complement of the maximum independent set; verified to cover all edges."""
    mis = set(mis_via_fvs(g, x, cap))
    cover = tuple(v for v in g.vertices if v not in mis)
    cset = set(cover)
    for u, v in g.edges():
        if u not in cset and v not in cset:
            raise AssertionError("vertex cover misses an edge")
    return cover


def q_coloring_via_fvs(
    g: Graph, x: Iterable[int], q: int, budget: int = 1_000_000
) -> ColoringAssignment | None:
    """Exact q-colorability given a feedback vertex set ``x``.

    Enumerates proper colorings of g[x] by backtracking; each one induces
    color lists on the forest, finished by the list-coloring DP. Returns the
    first success in enumeration order, or None.
    """
    if q < 1:
        raise ValueError("q must be positive")
    xs = tuple(sorted(set(x)))
    if not is_fvs(g, xs):
        raise ValueError("x is not a feedback vertex set of the graph")
    counter = Budget(budget, "FVS coloring enumeration")
    forest = g.delete_vertices(xs)
    colors_of: dict[int, int] = {}
    full = frozenset(range(1, q + 1))

    def assignable(v: int, c: int) -> bool:
        return all(colors_of.get(u) != c for u in g.neighbors(v))

    def backtrack(i: int) -> ColoringAssignment | None:
        counter.spend(1)
        if i == len(xs):
            lists = {
                w: full - {colors_of[u] for u in g.neighbors(w) if u in colors_of}
                for w in forest.vertices
            }
            tail = forest_list_coloring(forest, lists)
            if tail is None:
                return None
            merged = dict(tail.items)
            merged.update(colors_of)
            return ColoringAssignment.from_dict(merged)
        v = xs[i]
        for c in range(1, q + 1):
            if assignable(v, c):
                colors_of[v] = c
                found = backtrack(i + 1)
                if found is not None:
                    return found
                del colors_of[v]
        return None

    return backtrack(0)


def chromatic_number_via_fvs(
    g: Graph, x: Iterable[int], budget: int = 1_000_000
) -> int:
    """Least q admitting a proper q-coloring, iterating q upward."""
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    for q in range(2, g.n + 1):
        if q_coloring_via_fvs(g, x, q, budget) is not None:
            return q
    raise AssertionError("a graph is always colorable with n colors")
