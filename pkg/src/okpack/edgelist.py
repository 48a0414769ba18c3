"""The edge-list file format and the DIMACS import courtesy.

Format: a header line ``n m``, then m body lines ``u v`` with
0 <= u < v < n. Lines starting with '#' are comments. ASCII, LF endings.
"""

from __future__ import annotations

from okpack.graphcore import Graph


class EdgeListError(ValueError):
    """Malformed edge-list or DIMACS input."""


def parse_edge_list(text: str) -> Graph:
    lines = [
        ln.strip()
        for ln in text.split("\n")
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise EdgeListError("missing header line")
    header = lines[0].split()
    if len(header) != 2:
        raise EdgeListError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise EdgeListError(f"non-integer header: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise EdgeListError(f"header promises {m} edges, found {len(body)} body lines")
    edges = []
    seen = set()
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise EdgeListError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise EdgeListError(f"non-integer edge line: {ln!r}") from exc
        if not (0 <= u < v < n):
            raise EdgeListError(f"edge ({u},{v}) violates 0 <= u < v < n = {n}")
        if (u, v) in seen:
            raise EdgeListError(f"duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    verts = g.vertices
    if verts != tuple(range(g.n)):
        raise EdgeListError("serialization needs contiguous vertex ids 0..n-1")
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Graph:
    """DIMACS 'p edge n m' / 'e u v' import; vertex ids are 1-based."""
    n = None
    edges = []
    for ln in text.split("\n"):
        ln = ln.strip()
        if not ln or ln.startswith("c"):
            continue
        parts = ln.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "edges"):
                raise EdgeListError(f"bad DIMACS problem line: {ln!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise EdgeListError("DIMACS edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise EdgeListError(f"bad DIMACS edge: {ln!r}")
            edges.append((min(u, v), max(u, v)))
    if n is None:
        raise EdgeListError("missing DIMACS problem line")
    return Graph.from_edges(n, sorted(set(edges)))


def load_graph(path: str, dimacs: bool = False) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    return parse_dimacs(text) if dimacs else parse_edge_list(text)
