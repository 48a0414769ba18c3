"""Quasi-polynomial branching over independent 4-cycle packings.

Maximum independent set branches on a vertex of a 4-cycle from a maximum
packing whose closed neighborhood meets at least a quarter of all maximum
packings; list 3-coloring branches on a (vertex, color) pair instead. Both
bottom out in the complete-bipartite-free case, solved through a feedback
vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from okpack.detectors import (
    PackingWitness,
    compatibility_masks,
    max_compatible_subset,
)
from okpack.errors import Budget, BudgetExceeded
from okpack.fvs import FvsConfig, log_fvs
from okpack.graphcore import Graph
from okpack.solvers import ColoringAssignment, forest_list_coloring, mis_via_fvs


@dataclass(frozen=True)
class BranchConfig:
    """Caps governing the exponential-at-desk-scale searches."""

    max_q: int = 3
    packing_enum_budget: int = 500_000
    node_budget: int = 200_000
    base_case_fvs_cfg: FvsConfig = field(default_factory=FvsConfig)

    def __post_init__(self):
        if self.max_q < 0:
            raise ValueError("max_q must be nonnegative")
        if self.packing_enum_budget < 1 or self.node_budget < 1:
            raise ValueError("budgets must be positive")


@dataclass
class BranchStats:
    """Counters reported by a branching run; all monotone during the run."""

    nodes_expanded: int = 0
    packings_enumerated: int = 0
    base_case_calls: int = 0
    max_depth: int = 0

    def to_json_dict(self) -> dict:
        return {
            "nodes_expanded": self.nodes_expanded,
            "packings_enumerated": self.packings_enumerated,
            "base_case_calls": self.base_case_calls,
            "max_depth": self.max_depth,
        }


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color lists over {1, 2, 3}; lists may be empty."""

    lists: tuple[tuple[int, frozenset[int]], ...]

    @classmethod
    def from_dict(cls, lists: Mapping[int, Iterable[int]]) -> "ListAssignment":
        norm = []
        for v, colors in sorted(lists.items()):
            cset = frozenset(colors)
            if not cset <= {1, 2, 3}:
                raise ValueError(f"list of vertex {v} is not a subset of {{1,2,3}}")
            norm.append((v, cset))
        return cls(tuple(norm))

    @classmethod
    def full(cls, g: Graph) -> "ListAssignment":
        return cls.from_dict({v: (1, 2, 3) for v in g.vertices})

    def as_dict(self) -> dict[int, frozenset[int]]:
        return dict(self.lists)


# -- independent 4-cycle machinery ---------------------------------------------------


def _four_cycles(g: Graph, counter: Budget) -> list[tuple[int, int, int, int]]:
    """All 4-vertex cycles (not necessarily induced), one per vertex set.

    Canonical representative: (a, b, c, d) walks the cycle with a the
    minimum vertex and b its smaller cycle neighbor; a vertex set hosting
    several 4-cycles (as in a clique) keeps the lexicographically least.
    """
    by_set: dict[frozenset[int], tuple[int, int, int, int]] = {}
    verts = g.vertices
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            common = sorted(g.neighbor_set(u) & g.neighbor_set(v))
            for a in range(len(common)):
                for b in range(a + 1, len(common)):
                    counter.spend(1)
                    w1, w2 = common[a], common[b]
                    cyc = (u, w1, v, w2)
                    lo = min(cyc)
                    idx = cyc.index(lo)
                    left, right = cyc[(idx - 1) % 4], cyc[(idx + 1) % 4]
                    opposite = cyc[(idx + 2) % 4]
                    canon = (lo, min(left, right), opposite, max(left, right))
                    key = frozenset(cyc)
                    if key not in by_set or canon < by_set[key]:
                        by_set[key] = canon
    return sorted(by_set.values())


def max_independent_c4_packing(
    g: Graph, budget: int | Budget = 500_000
) -> tuple[int, PackingWitness]:
    """Maximum number of pairwise independent 4-vertex cycles, with witness.

    The witness is the canonically least maximum packing, so downstream
    branching is deterministic.
    """
    counter = budget if isinstance(budget, Budget) else Budget(budget, "4-cycle packing")
    cycles = _four_cycles(g, counter)
    masks = compatibility_masks(g, cycles, independent=True)
    chosen = max_compatible_subset(masks, counter.spend)
    return len(chosen), PackingWitness(tuple(cycles[i] for i in chosen))


def enumerate_c4_packings(
    g: Graph, q: int, budget: int | Budget = 500_000
) -> list[frozenset[int]]:
    """All 4q-vertex sets decomposing into q pairwise independent 4-cycles.

    Results are deduplicated as vertex sets and returned in a deterministic
    order.
    """
    if q < 1:
        raise ValueError("q must be positive")
    counter = budget if isinstance(budget, Budget) else Budget(budget, "packing family")
    cycles = _four_cycles(g, counter)
    masks = compatibility_masks(g, cycles, independent=True)
    found: set[frozenset[int]] = set()

    def rec(start: int, pool: int, chosen: list[int]) -> None:
        counter.spend(1)
        if len(chosen) == q:
            found.add(frozenset(v for i in chosen for v in cycles[i]))
            return
        for i in range(start, len(cycles)):
            if (pool >> i) & 1:
                rec(i + 1, pool & masks[i], chosen + [i])

    rec(0, (1 << len(cycles)) - 1, [])
    return sorted(found, key=sorted)


def _packing_count(g: Graph, q: int, counter: Budget) -> int:
    return len(enumerate_c4_packings(g, q, counter))


# -- maximum independent set -----------------------------------------------------------


def qmis(g: Graph, cfg: BranchConfig | None = None) -> tuple[tuple[int, ...], BranchStats]:
    """Exact maximum independent set by branching over 4-cycle packings.

    Recursion: with q the current maximum number of independent 4-cycles,
    q = 0 means the graph has no complete bipartite K_{2,2} subgraph and the
    FVS-modulated solver finishes; otherwise pick the 4-cycle C from the
    canonical maximum packing, take the vertex v of C whose closed
    neighborhood meets the most packings (at least a quarter of them, which
    is asserted), and branch on taking v versus discarding it.

    Raises :class:`BudgetExceeded` when a budget runs out; never returns a
    wrong answer.
    """
    cfg = cfg or BranchConfig()
    stats = BranchStats()
    nodes = Budget(cfg.node_budget, "branching nodes")
    packs = Budget(cfg.packing_enum_budget, "packing enumeration")

    root_q, _ = max_independent_c4_packing(g, packs)
    if root_q > cfg.max_q:
        raise BudgetExceeded(f"root packing number {root_q} exceeds max_q={cfg.max_q}", cfg.max_q)

    def rec(h: Graph, depth: int) -> tuple[int, ...]:
        nodes.spend(1)
        stats.nodes_expanded += 1
        stats.max_depth = max(stats.max_depth, depth)
        q, witness = max_independent_c4_packing(h, packs)
        if q == 0:
            stats.base_case_calls += 1
            fvs_result = log_fvs(h, cfg.base_case_fvs_cfg)
            return mis_via_fvs(h, fvs_result.vertices)
        family = enumerate_c4_packings(h, q, packs)
        stats.packings_enumerated += len(family)
        s = len(family)
        cyc = min(witness.cycles)
        cover = {
            v: sum(1 for member in family if h.closed_neighborhood(v) & member)
            for v in cyc
        }
        v = min(cover, key=lambda u: (-cover[u], u))
        quarter = -(-s // 4)
        if cover[v] < quarter:
            raise AssertionError(
                f"selected vertex meets {cover[v]} of {s} packings, below s/4"
            )
        take_graph = h.delete_vertices(h.closed_neighborhood(v))
        took = tuple(sorted(rec(take_graph, depth + 1) + (v,)))
        if _packing_count(take_graph, q, packs) > s - quarter:
            raise AssertionError("taking the branch vertex removed too few packings")
        skip_graph = h.delete_vertices([v])
        skipped = rec(skip_graph, depth + 1)
        if _packing_count(skip_graph, q, packs) > s - 1:
            raise AssertionError("discarding the branch vertex removed no packing")
        if len(took) > len(skipped) or (len(took) == len(skipped) and took <= skipped):
            return took
        return skipped

    return rec(g, 0), stats


# -- list 3-coloring --------------------------------------------------------------------


def _saturate_lists(
    h: Graph, lists: dict[int, frozenset[int]]
) -> tuple[Graph, dict[int, frozenset[int]], dict[int, int]] | None:
    """Apply the reduction rules until fixpoint.

    An empty list makes the instance negative (returns None); a singleton
    list colors its vertex, strips the color from neighbor lists, and deletes
    the vertex.
    """
    fixed: dict[int, int] = {}
    while True:
        if any(not colors for colors in lists.values()):
            return None
        singles = sorted(v for v, colors in lists.items() if len(colors) == 1)
        if not singles:
            return h, lists, fixed
        v = singles[0]
        (c,) = lists[v]
        fixed[v] = c
        for u in h.neighbors(v):
            lists[u] = lists[u] - {c}
        del lists[v]
        h = h.delete_vertices([v])


def _list_color_via_fvs(
    h: Graph, x: tuple[int, ...], lists: dict[int, frozenset[int]], counter: Budget
) -> dict[int, int] | None:
    """Enumerate list-proper colorings of h[x]; finish each on the forest."""
    forest = h.delete_vertices(x)
    colors_of: dict[int, int] = {}

    def backtrack(i: int) -> dict[int, int] | None:
        counter.spend(1)
        if i == len(x):
            flists = {
                w: lists[w]
                - {colors_of[u] for u in h.neighbors(w) if u in colors_of}
                for w in forest.vertices
            }
            tail = forest_list_coloring(forest, flists)
            if tail is None:
                return None
            merged = dict(tail.items)
            merged.update(colors_of)
            return merged
        v = x[i]
        for c in sorted(lists[v]):
            if all(colors_of.get(u) != c for u in h.neighbors(v)):
                colors_of[v] = c
                found = backtrack(i + 1)
                if found is not None:
                    return found
                del colors_of[v]
        return None

    return backtrack(0)


def list3color(
    g: Graph, lists: ListAssignment | Mapping[int, Iterable[int]], cfg: BranchConfig | None = None
) -> tuple[ColoringAssignment | None, BranchStats]:
    """Exact list 3-coloring: a proper assignment or a correct negative.

    Reductions saturate first; the 4-cycle packing drives the branching, and
    the chosen (vertex, color) pair maximizes the number of neighbor lists
    containing the color (ties: lowest vertex, then smallest color). Each
    branch either commits the color or forbids it.
    """
    cfg = cfg or BranchConfig()
    stats = BranchStats()
    nodes = Budget(cfg.node_budget, "branching nodes")
    packs = Budget(cfg.packing_enum_budget, "packing enumeration")
    if isinstance(lists, ListAssignment):
        start_lists = lists.as_dict()
    else:
        start_lists = ListAssignment.from_dict(lists).as_dict()
    if set(start_lists) != set(g.vertices):
        raise ValueError("lists must cover exactly the vertices of the graph")

    def rec(h: Graph, current: dict[int, frozenset[int]], depth: int) -> dict[int, int] | None:
        nodes.spend(1)
        stats.nodes_expanded += 1
        stats.max_depth = max(stats.max_depth, depth)
        reduced = _saturate_lists(h, dict(current))
        if reduced is None:
            return None
        h, current, fixed = reduced
        if h.n == 0:
            return fixed
        q, witness = max_independent_c4_packing(h, packs)
        if q == 0:
            stats.base_case_calls += 1
            fvs_result = log_fvs(h, cfg.base_case_fvs_cfg)
            tail = _list_color_via_fvs(h, fvs_result.vertices, current, nodes)
            if tail is None:
                return None
            return fixed | tail
        stats.packings_enumerated += len(enumerate_c4_packings(h, q, packs))
        cyc = min(witness.cycles)
        best_pair = None
        best_count = -1
        for v in sorted(cyc):
            for c in sorted(current[v]):
                count = sum(1 for u in h.neighbors(v) if c in current[u])
                if count > best_count:
                    best_count = count
                    best_pair = (v, c)
        assert best_pair is not None
        v, c = best_pair
        colored = dict(current)
        del colored[v]
        for u in h.neighbors(v):
            colored[u] = colored[u] - {c}
        sub = rec(h.delete_vertices([v]), colored, depth + 1)
        if sub is not None:
            return fixed | sub | {v: c}
        forbidden = dict(current)
        forbidden[v] = forbidden[v] - {c}
        sub = rec(h, forbidden, depth + 1)
        if sub is not None:
            return fixed | sub
        return None

    solution = rec(g, start_lists, 0)
    if solution is None:
        return None, stats
    assignment = ColoringAssignment.from_dict(solution)
    if not assignment.is_proper(g) or not assignment.respects(start_lists):
        raise AssertionError("list coloring violates its own constraints")
    return assignment, stats


def three_coloring(g: Graph, cfg: BranchConfig | None = None) -> ColoringAssignment | None:
    """3-coloring as list coloring with every list equal to {1, 2, 3}."""
    assignment, _ = list3color(g, ListAssignment.full(g), cfg)
    return assignment
