"""Djoković–Winkler relation, its classes, and partial-cube recognition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import InvalidInputError
from .graph import Edge, Graph, canon_edge


def theta_related(g: Graph, d: np.ndarray | None, e: Edge, f: Edge) -> bool:
    """``xy Θ uv`` iff ``d(x,u) + d(y,v) != d(x,v) + d(y,u)``."""
    d = g.distances if d is None else d
    for edge in (e, f):
        if not g.has_edge(*edge):
            raise InvalidInputError(f"{tuple(edge)} is not an edge of the graph")
    x, y = e
    u, v = f
    return bool(d[x, u] + d[y, v] != d[x, v] + d[y, u])


def theta_matrix(g: Graph, d: np.ndarray | None = None) -> np.ndarray:
    """Boolean ``m x m`` matrix of the relation, edges in ``g.edges`` order."""
    d = g.distances if d is None else d
    e = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)
    x, y = e[:, 0], e[:, 1]
    lhs = d[np.ix_(x, x)] + d[np.ix_(y, y)]
    rhs = d[np.ix_(x, y)] + d[np.ix_(y, x)]
    return lhs != rhs


@dataclass(frozen=True)
class ThetaClasses:
    """Classes of the transitive closure of Θ, ordered by their smallest edge."""

    classes: tuple[frozenset[Edge], ...]
    index: dict[Edge, int]
    transitive: bool  # Θ already equals its closure

    def __len__(self):
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def theta_classes(g: Graph, d: np.ndarray | None = None) -> ThetaClasses:
    rel = theta_matrix(g, d)
    _, comp = connected_components(csr_matrix(rel), directed=False)
    groups: dict[int, list[Edge]] = {}
    for e, c in zip(g.edges, comp):
        groups.setdefault(int(c), []).append(e)
    ordered = sorted((tuple(sorted(v)) for v in groups.values()), key=lambda c: c[0])
    classes = tuple(frozenset(c) for c in ordered)
    index = {e: i for i, c in enumerate(ordered) for e in c}
    closure = comp[:, None] == comp[None, :]
    return ThetaClasses(classes, index, bool(np.array_equal(closure, rel)))


def is_bipartite(g: Graph, d: np.ndarray | None = None) -> bool:
    """For a connected graph: no edge joins two vertices at equal distance from vertex 0."""
    d = g.distances if d is None else d
    if g.n == 0:
        return True
    return all(d[0, u] != d[0, v] for u, v in g.edges)


def is_partial_cube(g: Graph, d: np.ndarray | None = None) -> bool:
    """Winkler's criterion: connected, bipartite, and Θ transitive."""
    d = g.distances if d is None else d
    return is_bipartite(g, d) and theta_classes(g, d).transitive


Selector = Callable[[Sequence[frozenset], int], Sequence[int]]


def largest_first(classes: Sequence[frozenset], count: int) -> list[int]:
    """Indices of the ``count`` largest classes, ties broken by smaller index."""
    order = sorted(range(len(classes)), key=lambda i: (-len(classes[i]), i))
    return order[:count]


def theta_union_kgp(g: Graph, k: int, selector: Selector | None = None, d: np.ndarray | None = None) -> frozenset[Edge]:
    """Union of ``k - 1`` Θ-classes of a partial cube; an edge k-gp set by construction.

    The caller is expected to re-verify the result with the checker.
    """
    if k < 3:
        raise InvalidInputError(f"k must be >= 3, got {k}")
    d = g.distances if d is None else d
    if not is_partial_cube(g, d):
        raise InvalidInputError("Θ-class union construction needs a partial cube")
    tc = theta_classes(g, d)
    if k - 1 > len(tc):
        raise InvalidInputError(f"graph has {len(tc)} Θ-classes; need k <= {len(tc) + 1}, got k={k}")
    chosen = list((selector or largest_first)(tc.classes, k - 1))
    if len(set(chosen)) != k - 1:
        raise InvalidInputError("selector must return k - 1 distinct class indices")
    return frozenset(canon_edge(*e) for i in chosen for e in tc.classes[i])
