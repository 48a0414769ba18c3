"""Decision procedures and witnesses: cycle packings, complete bipartite
subgraphs, bananas, and girth sparsification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import inf
from typing import Iterable, Sequence

from okpack.errors import Budget, CapExceeded, SearchBudgetExceeded
from okpack.graphcore import Graph, MultiGraph, shortest_cycle, girth, suppress_degree_two

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class PackingWitness:
    """A collection of cycles certifying a packing value."""

    cycles: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def vertex_sets(self) -> list[frozenset[int]]:
        return [frozenset(c) for c in self.cycles]

    def is_valid_for(self, g: Graph, independent: bool = True) -> bool:
        """Check cycle structure, pairwise disjointness and, if requested,
        the absence of edges between any two cycles."""
        for c in self.cycles:
            if len(c) < 3 or len(set(c)) != len(c):
                return False
            for a, b in zip(c, c[1:] + c[:1]):
                if not g.has_edge(a, b):
                    return False
        sets = self.vertex_sets()
        for s, t in combinations(range(len(sets)), 2):
            if sets[s] & sets[t]:
                return False
            if independent and any(g.neighbor_set(v) & sets[t] for v in sets[s]):
                return False
        return True


@dataclass(frozen=True)
class KttWitness:
    """Two disjoint vertex sides with every cross pair an edge."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def is_valid_for(self, g: Graph) -> bool:
        if set(self.left) & set(self.right):
            return False
        return all(g.has_edge(u, v) for u in self.left for v in self.right)


# -- induced cycle enumeration ---------------------------------------------------


def enumerate_induced_cycles(g: Graph, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All chordless cycles of length >= 3, one canonical tuple each.

    Canonical form: lowest vertex first, then the smaller of its two cycle
    neighbors. Output is sorted by (length, sequence). Raises
    :class:`CapExceeded` once more than ``cap`` cycles are found.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    cycles: list[tuple[int, ...]] = []
    for s in g.vertices:
        s_nbrs = g.neighbor_set(s)
        # DFS over chordless paths whose minimum vertex is the start s
        dfs = [((s, a), frozenset((s, a))) for a in sorted(s_nbrs, reverse=True) if a > s]
        while dfs:
            pth, used = dfs.pop()
            t = pth[-1]
            for w in g.neighbors(t):
                if w <= s or w in used:
                    continue
                wn = g.neighbor_set(w)
                # chordless: w may touch the path only at t (and s on closing)
                if any(p in wn for p in pth[1:-1]):
                    continue
                if s in wn:
                    if pth[1] < w:
                        cycles.append(pth + (w,))
                        if len(cycles) > cap:
                            raise CapExceeded("induced cycle enumeration", cap, len(cycles))
                else:
                    dfs.append((pth + (w,), used | {w}))
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


# -- maximum compatible subsets (shared clique engine) ----------------------------


def compatibility_masks(
    g: Graph, sets: Sequence[Iterable[int]], independent: bool
) -> list[int]:
    """Bitmask per item of the items it can share a packing with.

    Two items are compatible when vertex-disjoint and, if ``independent``,
    with no edge between them.
    """
    vsets = [frozenset(s) for s in sets]
    if independent:
        closed = [
            vs | frozenset(w for v in vs for w in g.neighbor_set(v)) for vs in vsets
        ]
    else:
        closed = vsets
    n = len(vsets)
    masks = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if vsets[i].isdisjoint(closed[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def _clique_at_least(masks: list[int], start_mask: int, target: int, spend) -> bool:
    """True when a pairwise-compatible subset of size ``target`` exists
    within ``start_mask``."""
    if target <= 0:
        return True

    def expand(p: int, size: int) -> bool:
        spend(1)
        if size >= target:
            return True
        while p:
            if size + p.bit_count() < target:
                return False
            low = p & -p
            v = low.bit_length() - 1
            p ^= low
            if size + 1 >= target or expand(p & masks[v], size + 1):
                return True
        return False

    return expand(start_mask, 0)


def max_compatible_subset(masks: list[int], spend) -> list[int]:
    """Indices of a maximum pairwise-compatible subset.

    Branch and bound ordered by compatibility degree (canonical index as the
    tie-break), followed by a lexicographic extraction so the returned
    witness is the canonically least maximum one.
    """
    n = len(masks)
    if n == 0:
        return []
    order = sorted(range(n), key=lambda i: (-masks[i].bit_count(), i))
    rank = {v: i for i, v in enumerate(order)}
    perm_masks = [0] * n
    for i in range(n):
        m = masks[order[i]]
        pm = 0
        while m:
            low = m & -m
            m ^= low
            pm |= 1 << rank[low.bit_length() - 1]
        perm_masks[i] = pm

    best = 0

    def expand(p: int, size: int) -> None:
        nonlocal best
        spend(1)
        if size > best:
            best = size
        while p:
            if size + p.bit_count() <= best:
                return
            low = p & -p
            v = low.bit_length() - 1
            p ^= low
            expand(p & perm_masks[v], size + 1)

    expand((1 << n) - 1, 0)

    chosen: list[int] = []
    pool = (1 << n) - 1
    need = best
    for i in range(n):
        if need == 0:
            break
        if not (pool >> i) & 1:
            continue
        inner = pool & masks[i]
        if _clique_at_least(masks, inner, need - 1, spend):
            chosen.append(i)
            pool = inner
            need -= 1
    if len(chosen) != best:
        raise AssertionError("lexicographic clique extraction lost the optimum")
    return chosen


def _cap_spender(what: str, cap: int):
    budget = Budget(cap, what)

    def spend(amount: int = 1) -> None:
        try:
            budget.spend(amount)
        except Exception:
            raise CapExceeded(what, cap, budget.spent) from None

    return spend


# -- packing numbers ---------------------------------------------------------------


def icp(g: Graph, cap: int = DEFAULT_CAP) -> tuple[int, PackingWitness]:
    """Maximum number of pairwise independent induced cycles, with witness.

    Computed as a maximum compatible subset over all induced cycles, two
    cycles being compatible when disjoint and non-adjacent.
    """
    cycles = enumerate_induced_cycles(g, cap)
    masks = compatibility_masks(g, cycles, independent=True)
    chosen = max_compatible_subset(masks, _cap_spender("independent packing search", cap))
    return len(chosen), PackingWitness(tuple(cycles[i] for i in chosen))


def is_ok_free(
    g: Graph, k: int, cap: int = DEFAULT_CAP
) -> tuple[bool, PackingWitness | None]:
    """True when the graph has no k pairwise independent cycles.

    When false, returns k independent cycles as the witness.
    """
    if k < 1:
        raise ValueError("k must be positive")
    value, witness = icp(g, cap)
    if value < k:
        return True, None
    return False, PackingWitness(witness.cycles[:k])


def cp(g: Graph, cap: int = DEFAULT_CAP) -> tuple[int, PackingWitness]:
    """Maximum number of vertex-disjoint cycles, with witness.

    Any disjoint cycle family can be shrunk to chordless cycles inside the
    same vertex sets, so the search runs over induced cycles with plain
    disjointness as the compatibility relation.
    """
    cycles = enumerate_induced_cycles(g, cap)
    masks = compatibility_masks(g, cycles, independent=False)
    chosen = max_compatible_subset(masks, _cap_spender("disjoint packing search", cap))
    return len(chosen), PackingWitness(tuple(cycles[i] for i in chosen))


# -- complete bipartite subgraphs ---------------------------------------------------


def has_kab(
    g: Graph, a: int, b: int, budget: int | None = None
) -> KttWitness | None:
    """A complete bipartite subgraph with side sizes (a, b), or None.

    Enumerates the smaller side with running common-neighborhood pruning.
    A budget (mandatory internally for min side >= 4) bounds the number of
    search nodes; exhausting it raises :class:`SearchBudgetExceeded`.
    """
    if a < 1 or b < 1:
        raise ValueError("side sizes must be positive")
    swapped = a > b
    small, large = (b, a) if swapped else (a, b)
    if budget is None and small >= 4:
        budget = 5_000_000
    counter = Budget(budget, "complete bipartite search") if budget else None

    verts = g.vertices

    def extend(chosen: list[int], common: frozenset[int], start: int):
        if counter:
            try:
                counter.spend(1)
            except Exception:
                raise SearchBudgetExceeded(
                    "complete bipartite search", budget
                ) from None
        if len(chosen) == small:
            right = tuple(sorted(common)[:large])
            return KttWitness(tuple(chosen), right)
        for idx in range(start, len(verts)):
            v = verts[idx]
            new_common = common & g.neighbor_set(v) if chosen else g.neighbor_set(v)
            if len(new_common) < large:
                continue
            found = extend(chosen + [v], new_common, idx + 1)
            if found:
                return found
        return None

    found = extend([], frozenset(), 0)
    if found is None:
        return None
    if swapped:
        return KttWitness(found.right, found.left)
    return found


def has_ktt_subgraph(g: Graph, t: int, budget: int | None = None) -> KttWitness | None:
    """A complete bipartite subgraph with t vertices per side, or None."""
    return has_kab(g, t, t, budget)


# -- bananas -----------------------------------------------------------------------


def find_bananas(g: Graph) -> list[tuple[int, int, int]]:
    """All vertex pairs joined by >= 2 disjoint paths with degree-2 interiors.

    Read off the suppressed multigraph as parallel edges between retained
    vertices; loops (bare cycle components) do not count.
    """
    mg = suppress_degree_two(g)
    return [
        (u, v, count)
        for (u, v), count in sorted(mg.multiplicity().items())
        if u != v and count >= 2
    ]


def _shortest_multigraph_cycle(
    alive: set[int], mult: Counter, max_len: int
) -> list[int] | None:
    """Lexicographically least shortest cycle of length 2..max_len, or None.

    Length 2 means a parallel edge pair; loops are ignored.
    """
    adj: dict[int, set[int]] = {v: set() for v in alive}
    best_pair = None
    for (u, v), count in sorted(mult.items()):
        if u == v or u not in alive or v not in alive:
            continue
        adj[u].add(v)
        adj[v].add(u)
        if count >= 2 and best_pair is None:
            best_pair = [u, v]
    if best_pair is not None:
        return best_pair
    if max_len < 3:
        return None
    for u in sorted(alive):
        nbrs = sorted(w for w in adj[u] if w > u)
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1 :]:
                if y in adj[x]:
                    return [u, x, y]
    if max_len < 4:
        return None
    for u in sorted(alive):
        best = None
        for x, y in combinations(sorted(adj[u]), 2):
            if x < u or y < u:
                continue
            for z in sorted(adj[x] & adj[y]):
                if z <= u:
                    continue
                cand = [u, x, z, y]
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return best
    return None


def banana_hitting_set(g: Graph) -> set[int]:
    """A vertex set whose deletion leaves no banana.

    Suppress degree-2 paths, greedily hit all short cycles (length <= 4) of
    the suppressed graph by deleting the vertices of a maximal disjoint
    family, lift back, and repeat until no banana remains. Deletion can
    merge paths and create fresh bananas, hence the outer fixpoint loop.
    """
    hit: set[int] = set()
    h = g
    while True:
        mg = suppress_degree_two(h)
        alive = set(mg.vertices)
        mult = mg.multiplicity()
        removed: set[int] = set()
        while True:
            cyc = _shortest_multigraph_cycle(alive, mult, max_len=4)
            if cyc is None:
                break
            removed.update(cyc)
            alive -= set(cyc)
        if not removed:
            break
        hit |= removed
        h = h.delete_vertices(removed)
    if find_bananas(h):
        raise AssertionError("hitting set left a banana behind")
    return hit


# -- girth sparsification ------------------------------------------------------------


def disjoint_short_cycle_packing(g: Graph, ell: int) -> PackingWitness:
    """Greedy maximal family of vertex-disjoint cycles of length <= ell.

    Repeatedly takes the canonical shortest cycle while it is short enough,
    deleting its vertices. Maximality (not maximum size) is what the girth
    post-condition downstream needs.
    """
    if ell < 3:
        raise ValueError("ell must be at least 3")
    current = g
    cycles: list[tuple[int, ...]] = []
    while True:
        c = shortest_cycle(current)
        if c is None or len(c) > ell:
            break
        cycles.append(tuple(c))
        current = current.delete_vertices(c)
    return PackingWitness(tuple(cycles))


def sparsify_girth(g: Graph, ell: int) -> tuple[set[int], Graph]:
    """Delete the greedy short-cycle packing so the rest has girth >= ell."""
    if ell < 3:
        raise ValueError("ell must be at least 3")
    packing = disjoint_short_cycle_packing(g, ell - 1)
    removed = {v for c in packing.cycles for v in c}
    residual = g.delete_vertices(removed)
    got = girth(residual)
    if got < ell:
        raise AssertionError(f"sparsification left girth {got} < {ell}")
    return removed, residual
