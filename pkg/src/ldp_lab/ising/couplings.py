"""Coupling matrices from graph families, random draws and text files."""

import io
import logging
from pathlib import Path

import networkx as nx
import numpy as np

from ldp_lab.core.exceptions import ArgumentError
from ldp_lab.linalg.symmetric import SymMatrix

logger = logging.getLogger(__name__)

GRAPH_FAMILIES = ("star", "cycle", "complete", "erdos-renyi")


def family_graph(family: str, n: int, p: float = 0.5, seed: int = 0) -> nx.Graph:
    if n < 1:
        raise ArgumentError(f"graph needs n >= 1, got {n}")
    match family:
        case "star":
            return nx.star_graph(n - 1)
        case "cycle":
            if n < 3:
                raise ArgumentError("cycle graph needs n >= 3")
            return nx.cycle_graph(n)
        case "complete":
            return nx.complete_graph(n)
        case "erdos-renyi":
            return nx.erdos_renyi_graph(n, p, seed=seed)
    raise ArgumentError(f"unknown graph family {family!r}; expected one of {GRAPH_FAMILIES}")


def adjacency(graph: nx.Graph) -> SymMatrix:
    nodes = sorted(graph.nodes())
    arr = nx.to_numpy_array(graph, nodelist=nodes, dtype=float)
    np.fill_diagonal(arr, 0.0)
    return SymMatrix(arr)


def family_coupling(family: str, n: int, scale: float = 1.0, p: float = 0.5, seed: int = 0) -> SymMatrix:
    """Adjacency matrix of a graph family multiplied by ``scale``."""
    return adjacency(family_graph(family, n, p=p, seed=seed)).scaled(scale)


def random_sparse_coupling(
    n: int, rng: np.random.Generator, density: float = 0.4, scale: float = 0.5
) -> SymMatrix:
    """Zero-diagonal coupling with Gaussian weights on a random edge subset."""
    m = n * (n - 1) // 2
    mask = rng.random(m) < density
    weights = rng.standard_normal(m) * scale / np.sqrt(max(n, 1))
    return SymMatrix.from_upper(n, np.where(mask, weights, 0.0))


def load_coupling_text(path: Path) -> SymMatrix:
    """Dense coupling matrix from a comma- or whitespace-separated text file."""
    text = Path(path).read_text(encoding="utf-8").replace(",", " ")
    try:
        arr = np.loadtxt(io.StringIO(text), ndmin=2)
    except ValueError as exc:
        raise ArgumentError(f"could not parse coupling file {path}: {exc}") from exc
    if arr.shape[0] != arr.shape[1]:
        raise ArgumentError(f"coupling file {path} is not square: {arr.shape}")
    matrix = SymMatrix.from_array(arr)
    logger.info("loaded %dx%d coupling from %s", matrix.n, matrix.n, path)
    return matrix
