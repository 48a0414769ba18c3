"""Graph generators: the extremal lower-bound family and seeded test families."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

from okpack.errors import EdgePlacementShortfall
from okpack.graphcore import Graph, cycle_rank

DEFAULT_MAX_K = 20  # 2^k growth; keeps the largest instance well under 1 GB


@dataclass(frozen=True)
class GkLabels:
    """Labeling data of the lower-bound graph.

    ``word[p]`` is the label of path vertex ``path_ids[p]``;
    ``star_ids[i-1]`` is the independent-set vertex carrying label ``i``.
    Label ``i`` occurs exactly ``2**(i-1)`` times in the word.
    """

    word: tuple[int, ...]
    path_ids: tuple[int, ...]
    star_ids: tuple[int, ...]


@dataclass(frozen=True)
class MinorCertificate:
    """Branch sets witnessing that ``target`` is a minor of a host graph."""

    branch_sets: tuple[frozenset[int], ...]
    target: Graph


def word_w(k: int, max_k: int = DEFAULT_MAX_K) -> tuple[int, ...]:
    """The recursive label word of length 2^k - 1 over alphabet 1..k.

    Start from (1,); each round increments every letter and splices a fresh 1
    in the middle. Equivalently the label at 1-indexed position j is
    k minus the 2-adic valuation of j.
    """
    if not 1 <= k <= max_k:
        raise ValueError(f"k must be in [1, {max_k}], got {k}")
    word = [1]
    for _ in range(k - 1):
        bumped = [x + 1 for x in word]
        word = bumped + [1] + bumped
    return tuple(word)


def gk(k: int, max_k: int = DEFAULT_MAX_K) -> tuple[Graph, GkLabels]:
    """The lower-bound graph on 2^k + k - 1 vertices.

    A path of 2^k - 1 vertices (ids 0..2^k-2, left to right) plus an
    independent set of k star vertices (ids 2^k-1 .. 2^k+k-2); star i is
    joined to exactly the path positions labeled i by :func:`word_w`.
    """
    word = word_w(k, max_k)
    p = (1 << k) - 1
    path_ids = tuple(range(p))
    star_ids = tuple(range(p, p + k))
    edges = [(i, i + 1) for i in range(p - 1)]
    edges += [(star_ids[label - 1], pos) for pos, label in enumerate(word)]
    return Graph.from_edges(p + k, edges), GkLabels(word, path_ids, star_ids)


def gk_fvs_certificate(k: int) -> frozenset[int]:
    """The k-1 star vertices with labels 2..k; deleting them leaves a forest."""
    if k < 2:
        raise ValueError("the certificate needs k >= 2")
    g, labels = gk(k)
    cert = frozenset(labels.star_ids[1:])
    if cycle_rank(g.delete_vertices(cert)) != 0:
        raise AssertionError("certificate deletion left a cycle")
    return cert


def gk_minor_certificate(k: int) -> MinorCertificate:
    """Branch sets certifying a complete minor on k+1 vertices.

    For each label i, the branch set is the star vertex i together with the
    subpath ending at the leftmost position labeled i and extending left
    maximally without meeting label i+1; the last set is everything right of
    the unique position labeled 1. For k = 1 the construction degenerates,
    so the two singleton sets of the 2-vertex graph are returned directly.
    """
    g, labels = gk(k)
    target = complete(k + 1)
    if k == 1:
        sets = (frozenset({labels.path_ids[0]}), frozenset({labels.star_ids[0]}))
        return MinorCertificate(sets, target)
    word = labels.word
    leftmost: dict[int, int] = {}
    for pos, lab in enumerate(word):
        leftmost.setdefault(lab, pos)
    branch_sets = []
    for i in range(1, k + 1):
        b = leftmost[i]
        a = b
        while a - 1 >= 0 and word[a - 1] != i + 1:
            a -= 1
        branch_sets.append(frozenset(range(a, b + 1)) | {labels.star_ids[i - 1]})
    branch_sets.append(frozenset(range(leftmost[1] + 1, len(word))))
    return MinorCertificate(tuple(branch_sets), target)


# -- seeded random family -------------------------------------------------------


def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labeled tree via a random Pruefer sequence."""
    if n < 2:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def _far_apart(adj: dict[int, set[int]], u: int, v: int, min_dist: int) -> bool:
    """True when dist(u, v) >= min_dist; BFS truncated at depth min_dist - 1."""
    if min_dist <= 1:
        return True
    dist = {u: 0}
    frontier = [u]
    depth = 0
    while frontier and depth < min_dist - 1:
        depth += 1
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = depth
                    if y == v:
                        return False
                    nxt.append(y)
        frontier = nxt
    return v not in dist


def forest_plus_edges(
    n: int,
    j: int,
    min_girth: int = 3,
    seed: int = 0,
    retry_factor: int = 50,
) -> Graph:
    """A seeded random spanning tree plus up to ``j`` girth-respecting edges.

    Each extra edge is accepted only if the cycle it closes has length at
    least ``min_girth``, so the result has girth >= min_girth and at most j
    vertex-disjoint cycles. Raises :class:`EdgePlacementShortfall` (carrying
    the partial graph) when the rejection sampling budget of
    ``retry_factor * j`` attempts runs out first.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if j < 0:
        raise ValueError("j must be nonnegative")
    rng = random.Random(seed)
    edges = _random_tree_edges(n, rng)
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    placed = 0
    attempts = 0
    max_attempts = retry_factor * j
    while placed < j and attempts < max_attempts:
        attempts += 1
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or v in adj[u]:
            continue
        if _far_apart(adj, u, v, min_girth - 1):
            adj[u].add(v)
            adj[v].add(u)
            edges.append((u, v))
            placed += 1
    g = Graph.from_edges(n, edges)
    if placed < j:
        raise EdgePlacementShortfall(j, placed, g)
    return g


# -- standard fixtures ----------------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("a path needs at least 1 vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("a complete graph needs at least 1 vertex")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides must be nonempty")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def theta(p1: int, p2: int, p3: int) -> Graph:
    """Two hub vertices (ids 0, 1) joined by three internally disjoint paths.

    Arguments are path lengths in edges; at most one may be 1 (a direct edge)
    since parallel edges are not representable.
    """
    lengths = (p1, p2, p3)
    if any(p < 1 for p in lengths):
        raise ValueError("path lengths must be positive")
    if sum(1 for p in lengths if p == 1) > 1:
        raise ValueError("at most one path may be a single edge")
    edges = []
    next_id = 2
    for p in lengths:
        prev = 0
        for _ in range(p - 1):
            edges.append((prev, next_id))
            prev = next_id
            next_id += 1
        edges.append((prev, 1))
    return Graph.from_edges(next_id, edges)
