"""Edge-list adjacency I/O and dense CSV export of candidate matrices."""

from pathlib import Path

import networkx as nx
import numpy as np

from ldp_lab.core.exceptions import ArgumentError
from ldp_lab.linalg.symmetric import SymMatrix


def read_edge_list(path: Path, n: int | None = None) -> SymMatrix:
    """0-indexed "u v" lines; ``n`` pads isolated trailing vertices."""
    graph = nx.read_edgelist(path, nodetype=int, data=False)
    nodes = list(graph.nodes())
    if nodes and min(nodes) < 0:
        raise ArgumentError(f"{path}: vertex labels must be >= 0")
    size = max(nodes, default=-1) + 1
    if n is not None:
        if n < size:
            raise ArgumentError(f"{path} mentions vertex {size - 1} but n={n}")
        size = n
    if size == 0:
        raise ArgumentError(f"{path} has no edges and no n was given")
    graph.add_nodes_from(range(size))
    graph.remove_edges_from(nx.selfloop_edges(graph))
    arr = nx.to_numpy_array(graph, nodelist=range(size), dtype=float)
    return SymMatrix(np.minimum(arr, 1.0))


def write_edge_list(adj: SymMatrix, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows, cols = np.nonzero(np.triu(adj.data, 1))
    lines = [f"{u} {v}\n" for u, v in zip(rows.tolist(), cols.tolist())]
    path.write_text("".join(lines), encoding="utf-8", newline="\n")
    return path


def export_dense_csv(y: SymMatrix, path: Path) -> Path:
    """Full matrix, comma separated, 17 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(format(v, ".17g") for v in row) + "\n" for row in y.data.tolist()]
    path.write_text("".join(lines), encoding="utf-8", newline="\n")
    return path
