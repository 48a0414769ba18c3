"""Feedback vertex sets: the sparsify / reduce / rich-vertex-deletion pipeline
producing small FVSes on sparse inputs with few independent cycles, plus an
exact branch-and-bound solver for the small-rank base case."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from okpack.detectors import sparsify_girth
from okpack.errors import Budget, BudgetExceeded
from okpack.graphcore import Graph, core, cycle_rank, shortest_cycle


@dataclass(frozen=True)
class FvsConfig:
    """Tuning knobs for :func:`log_fvs`."""

    girth_target: int = 11
    fallback_rank_threshold: int = 16
    fallback_node_budget: int = 200_000

    def __post_init__(self):
        if self.girth_target < 3:
            raise ValueError("girth_target must be at least 3")
        if self.fallback_rank_threshold < 1 or self.fallback_node_budget < 1:
            raise ValueError("thresholds must be positive")


@dataclass(frozen=True)
class FvsPhases:
    """Per-phase trace of a :func:`log_fvs` run.

    ``greedy_steps`` rows are (vertex, degree at deletion, rank before,
    rank after). ``fallback_exact`` is False when the exact base-case search
    ran out of budget and a greedy cycle-breaking finish was used instead.
    """

    sparsify_removed: tuple[int, ...]
    greedy_steps: tuple[tuple[int, int, int, int], ...]
    fallback_removed: tuple[int, ...]
    fallback_exact: bool = True


@dataclass(frozen=True)
class FvsResult:
    vertices: tuple[int, ...]
    phases: FvsPhases
    input_rank: int
    valid: bool

    def to_json_dict(self) -> dict:
        return {
            "fvs": list(self.vertices),
            "phases": {
                "sparsify_removed": list(self.phases.sparsify_removed),
                "greedy_steps": [list(s) for s in self.phases.greedy_steps],
                "fallback_removed": list(self.phases.fallback_removed),
                "fallback_exact": self.phases.fallback_exact,
            },
            "input_rank": self.input_rank,
            "valid": self.valid,
        }


def is_fvs(g: Graph, x: Iterable[int]) -> bool:
    """True when deleting ``x`` leaves a forest."""
    xs = set(x)
    unknown = xs - set(g.vertices)
    if unknown:
        raise ValueError(f"not vertices of the graph: {sorted(unknown)}")
    return cycle_rank(g.delete_vertices(xs)) == 0


def rich_ratio(g: Graph) -> tuple[int, Fraction]:
    """The maximum-degree vertex and its degree over the cycle rank.

    The empirical richness witness; rejects forests (rank 0).
    """
    r = cycle_rank(g)
    if r == 0:
        raise ValueError("rich ratio is undefined on forests")
    v = min(g.vertices, key=lambda u: (-g.degree(u), u))
    return v, Fraction(g.degree(v), r)


def _greedy_cycle_fvs(g: Graph) -> list[int]:
    """Break every cycle by taking the lowest vertex of a shortest cycle."""
    out: list[int] = []
    current = g
    while True:
        c = shortest_cycle(current)
        if c is None:
            return out
        v = min(c)
        out.append(v)
        current = current.delete_vertices([v])


# -- exact minimum FVS ------------------------------------------------------------
#
# Branch and bound over shortest cycles with current-best pruning. States are
# multigraphs: the safe degree-2 contraction can create parallel edges and
# loops, which in turn force vertices into the solution.


def _state_from_graph(g: Graph) -> dict[int, Counter]:
    return {v: Counter(g.neighbors(v)) for v in g.vertices}


def _copy_state(adj: dict[int, Counter]) -> dict[int, Counter]:
    return {v: Counter(c) for v, c in adj.items()}


def _state_degree(adj: dict[int, Counter], v: int) -> int:
    return sum(adj[v].values()) + adj[v].get(v, 0)  # a loop counts twice


def _remove_state_vertex(adj: dict[int, Counter], v: int) -> None:
    for w in list(adj[v]):
        if w != v:
            del adj[w][v]
    del adj[v]


def _reduce_state(adj: dict[int, Counter], forced: list[int]) -> None:
    """Saturate the safe rules: loops force their vertex; degree <= 1 vertices
    vanish; degree-2 vertices contract (a double edge to a single neighbor
    forces that neighbor instead)."""
    while True:
        looped = sorted(v for v in adj if adj[v].get(v, 0))
        if looped:
            v = looped[0]
            forced.append(v)
            _remove_state_vertex(adj, v)
            continue
        low = sorted(v for v in adj if _state_degree(adj, v) <= 2)
        if not low:
            return
        v = low[0]
        deg = _state_degree(adj, v)
        if deg <= 1:
            _remove_state_vertex(adj, v)
            continue
        nbrs = list(adj[v])
        if len(nbrs) == 1:
            # double edge: some minimum FVS takes the other endpoint
            w = nbrs[0]
            forced.append(w)
            _remove_state_vertex(adj, w)
            continue
        a, b = nbrs
        _remove_state_vertex(adj, v)
        adj[a][b] += 1
        adj[b][a] += 1


def _state_shortest_cycle(adj: dict[int, Counter]) -> list[int]:
    """Shortest cycle of a reduced state: a parallel pair if any, else the
    canonical shortest cycle of the underlying simple graph."""
    for u in sorted(adj):
        for w in sorted(adj[u]):
            if w > u and adj[u][w] >= 2:
                return [u, w]
    simple = Graph(
        {v: tuple(sorted(w for w in adj[v] if w != v)) for v in adj}, _trusted=True
    )
    c = shortest_cycle(simple)
    if c is None:
        raise AssertionError("reduced state with vertices must contain a cycle")
    return c


def exact_fvs(g: Graph, budget: int = 200_000) -> tuple[int, ...]:
    """A minimum feedback vertex set; deterministic.

    Intended for graphs of small cycle rank. Upper bound is seeded by the
    greedy cycle breaker (at most the cycle rank); raises
    :class:`BudgetExceeded` when the node budget runs out.
    """
    if cycle_rank(g) == 0:
        return ()
    counter = Budget(budget, "exact feedback vertex set")
    best = sorted(_greedy_cycle_fvs(g))

    def search(adj: dict[int, Counter], chosen: list[int]) -> None:
        nonlocal best
        counter.spend(1)
        _reduce_state(adj, chosen)
        if len(chosen) >= len(best):
            return
        if not adj:
            best = sorted(chosen)
            return
        for v in _state_shortest_cycle(adj):
            branch = _copy_state(adj)
            _remove_state_vertex(branch, v)
            search(branch, chosen + [v])

    search(_state_from_graph(g), [])
    return tuple(best)


# -- the logarithmic pipeline -------------------------------------------------------


def log_fvs(g: Graph, cfg: FvsConfig | None = None) -> FvsResult:
    """Feedback vertex set via sparsify, reduce, and rich-vertex deletion.

    Phase 1 removes a greedy packing of short cycles so the rest has girth at
    least ``cfg.girth_target``. Phase 2 repeatedly reduces to the core and
    deletes the maximum-degree vertex (lowest id on ties) while the cycle
    rank exceeds ``cfg.fallback_rank_threshold``; below the threshold the
    exact solver finishes the job. The returned set is always validated.

    On hypothesis-satisfying inputs (few independent cycles, no large
    complete bipartite subgraph) the size stays logarithmic in practice; on
    arbitrary inputs the result is still a valid FVS with no size promise.
    """
    cfg = cfg or FvsConfig()
    input_rank = cycle_rank(g)
    removed_x, work = sparsify_girth(g, cfg.girth_target)
    chosen: set[int] = set(removed_x)
    greedy_steps: list[tuple[int, int, int, int]] = []
    fallback_removed: tuple[int, ...] = ()
    fallback_exact = True
    while True:
        reduced, _ = core(work)
        if reduced.n == 0:
            break
        rank_before = cycle_rank(reduced)
        if rank_before <= cfg.fallback_rank_threshold:
            try:
                tail = exact_fvs(reduced, cfg.fallback_node_budget)
            except BudgetExceeded:
                tail = tuple(_greedy_cycle_fvs(reduced))
                fallback_exact = False
            fallback_removed = tuple(sorted(tail))
            chosen.update(tail)
            break
        v = min(reduced.vertices, key=lambda u: (-reduced.degree(u), u))
        degree = reduced.degree(v)
        work = reduced.delete_vertices([v])
        greedy_steps.append((v, degree, rank_before, cycle_rank(work)))
        chosen.add(v)
    if not is_fvs(g, chosen):
        raise AssertionError("log_fvs produced an invalid feedback vertex set")
    return FvsResult(
        vertices=tuple(sorted(chosen)),
        phases=FvsPhases(
            sparsify_removed=tuple(sorted(removed_x)),
            greedy_steps=tuple(greedy_steps),
            fallback_removed=fallback_removed,
            fallback_exact=fallback_exact,
        ),
        input_rank=input_rank,
        valid=True,
    )
