"""Equitable colorings of sparse high-girth graphs.

Library layout:

- ``graphs``: graph values, DIMACS I/O, girth and exact maximum average degree
- ``threads``: thread decomposition and per-vertex thread statistics
- ``coloring``: coloring values, equitability checks, list assignments
- ``lemmas``: the constructive extension procedures
- ``solver``: find-a-configuration / delete / recurse / extend pipeline
- ``oracle``: brute-force ground truth at desk scale
- ``discharge``: exact-rational charge bookkeeping and audits
- ``generators``: named families, random high-girth corpora, gadgets
- ``cli``: the ``equicolor`` command
"""

from . import errors
from .graphs import Graph, Metrics, components, delete_vertices, dump_graph, girth, load_graph, mad_exact, metrics

__all__ = [
    "Graph",
    "Metrics",
    "components",
    "delete_vertices",
    "dump_graph",
    "errors",
    "girth",
    "load_graph",
    "mad_exact",
    "metrics",
]
