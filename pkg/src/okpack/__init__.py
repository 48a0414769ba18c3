"""Graph algorithms for graphs with few pairwise independent cycles.

Core objects live in :mod:`okpack.graphcore`; detection and packing
procedures in :mod:`okpack.detectors`; the extremal family and fixtures in
:mod:`okpack.generators`; feedback vertex set computation in
:mod:`okpack.fvs`; FVS-modulated exact solvers in :mod:`okpack.solvers`;
quasi-polynomial branching in :mod:`okpack.branching`; brute-force anchors in
:mod:`okpack.oracles`; file formats and the command line in
:mod:`okpack.edgelist` and :mod:`okpack.cli`.
"""

from okpack.graphcore import (
    Graph,
    MultiGraph,
    ReductionTrace,
    average_degree,
    core,
    cycle_rank,
    girth,
    shortest_cycle,
    suppress_degree_two,
)

__all__ = [
    "Graph",
    "MultiGraph",
    "ReductionTrace",
    "average_degree",
    "core",
    "cycle_rank",
    "girth",
    "shortest_cycle",
    "suppress_degree_two",
]
