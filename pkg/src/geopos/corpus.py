"""Test corpora: every small connected graph, and seeded random connected graphs."""

from __future__ import annotations

from itertools import combinations

import networkx as nx
import numpy as np

from . import families as fam
from .graph import Graph


def from_networkx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), tuple((idx[u], idx[v]) for u, v in h.edges()))


def small_connected_graphs(max_n: int = 6) -> list[Graph]:
    """All connected graphs on 2..max_n vertices up to isomorphism (``max_n <= 7``)."""
    out = []
    for h in nx.graph_atlas_g():
        if 2 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            out.append(from_networkx(h))
    return out


def matching_corpus() -> list[tuple[str, Graph]]:
    named = [(f"atlas[{i}]", g) for i, g in enumerate(small_connected_graphs(6))]
    named += [(f"path:{n}", fam.generate(fam.path(n))) for n in (5, 6)]
    named += [(f"cycle:{n}", fam.generate(fam.cycle(n))) for n in range(4, 11)]
    return named


def random_connected_graph(rng: np.random.Generator, max_edges: int = 18, n_range: tuple[int, int] = (4, 9)) -> Graph:
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    order = rng.permutation(n)
    edges = {tuple(sorted((int(order[i]), int(order[rng.integers(0, i)])))) for i in range(1, n)}
    pool = [e for e in combinations(range(n), 2) if e not in edges]
    cap = min(max_edges, len(pool) + len(edges))
    target = int(rng.integers(len(edges), cap + 1))
    extra = rng.permutation(len(pool))[: target - len(edges)]
    edges |= {pool[i] for i in extra}
    return Graph(n, tuple(sorted(edges)))


def random_connected_graphs(count: int = 200, max_edges: int = 18, seed: int = 20240917) -> list[Graph]:
    rng = np.random.default_rng(seed)
    return [random_connected_graph(rng, max_edges) for _ in range(count)]
