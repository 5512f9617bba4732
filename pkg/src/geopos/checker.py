"""Common-geodesic machinery: interval DAGs, the marked-edge sweep, and the
edge k-general-position predicates built on it.

The central quantity is ``max |S ∩ E(P)|`` over all geodesics ``P``. For a fixed
start vertex ``u``, every path that only ever steps from BFS layer ``i`` to layer
``i + 1`` of ``u`` is a geodesic, and every geodesic starting at ``u`` is such a
path. So one longest-path DP over the BFS layers of ``u`` (edge weight 1 on
``S``, 0 elsewhere) answers the question for all targets ``v`` at once; that DP
restricted to a single target is exactly the longest path in the ``u, v``
interval DAG.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, InvalidInputError
from .graph import Edge, GeodesicPath, Graph, canon_edge, default_budget, diameter, edge_distance, is_geodesic, vertex_set_distance


def _dist(g: Graph, d: np.ndarray | None) -> np.ndarray:
    return g.distances if d is None else d


def geodesic_interval_dag(g: Graph, d: np.ndarray | None, u: int, v: int) -> list[tuple[int, int]]:
    """Arcs ``(x, y)`` with ``d(u,x) + 1 + d(y,v) = d(u,v)``, ordered by layer ``d(u, x)``."""
    if u == v:
        raise InvalidInputError("interval DAG needs two distinct vertices")
    d = _dist(g, d)
    duv = d[u, v]
    arcs = []
    for a, b in g.edges:
        for x, y in ((a, b), (b, a)):
            if d[u, x] + 1 + d[y, v] == duv:
                arcs.append((x, y))
    arcs.sort(key=lambda arc: (int(d[u, arc[0]]), arc))
    return arcs


def interval_max_marked(g: Graph, d: np.ndarray | None, u: int, v: int, s: Iterable[Edge]) -> tuple[int, GeodesicPath]:
    """Longest ``u -> v`` path in the interval DAG, weighting edges of ``s`` by 1."""
    d = _dist(g, d)
    marked = {canon_edge(*e) for e in s}
    best = {u: 0}
    parent: dict[int, int] = {}
    for x, y in geodesic_interval_dag(g, d, u, v):
        val = best[x] + (canon_edge(x, y) in marked)
        if val > best.get(y, -1):
            best[y] = val
            parent[y] = x
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return best[v], GeodesicPath(tuple(reversed(path)))


@dataclass(frozen=True)
class MarkedScan:
    """Outcome of a common-geodesic sweep.

    ``witness`` is a geodesic attaining ``max_marked`` (``None`` when ``S`` is
    empty). ``pairs_swept`` counts the ordered ``(u, v)`` pairs whose interval
    DAGs the sweep covered.
    """

    max_marked: int
    witness: GeodesicPath | None
    sources_swept: int
    pairs_swept: int


def scan_common_geodesic(g: Graph, s: Iterable[Sequence[int]], d: np.ndarray | None = None, *, restrict: bool = True) -> MarkedScan:
    """Maximum number of edges of ``s`` lying on one geodesic of ``g``.

    With ``restrict`` the sweep only starts from endpoints of ``s``: trimming an
    optimal geodesic so that it begins at its first marked edge loses nothing.
    """
    d = _dist(g, d)
    marked = g.edge_set(s)
    if not marked:
        return MarkedScan(0, None, 0, 0)
    if restrict:
        sources = sorted({x for e in marked for x in e})
    else:
        sources = list(range(g.n))
    weighted = [[(x, int(canon_edge(x, y) in marked)) for x in nbrs] for y, nbrs in enumerate(g.adjacency)]

    best_key = (-1, 0, 0)
    best_path = None
    for u in sources:
        du = d[u].tolist()
        order = np.argsort(d[u], kind="stable").tolist()
        val = [-1] * g.n
        par = [-1] * g.n
        val[u] = 0
        local_key, local_end = (0, 0, -u), u
        for y in order[1:]:
            layer = du[y] - 1
            bv, bp = -1, -1
            for x, w in weighted[y]:
                if du[x] == layer and val[x] + w > bv:
                    bv, bp = val[x] + w, x
            val[y], par[y] = bv, bp
            key = (bv, -du[y], -y)
            if key > local_key:
                local_key, local_end = key, y
        if local_key[0] > best_key[0]:
            best_key = local_key
            path = [local_end]
            while path[-1] != u:
                path.append(par[path[-1]])
            best_path = GeodesicPath(tuple(reversed(path)))
    return MarkedScan(best_key[0], best_path, len(sources), len(sources) * (g.n - 1))


def max_marked_on_common_geodesic(g: Graph, s: Iterable[Sequence[int]], d: np.ndarray | None = None, *, restrict: bool = True) -> int:
    return scan_common_geodesic(g, s, d, restrict=restrict).max_marked


def _check_k(k: int) -> None:
    if k < 3:
        raise InvalidInputError(f"edge k-general position requires k >= 3, got k={k}")


def is_edge_kgp(g: Graph, s: Iterable[Sequence[int]], k: int, d: np.ndarray | None = None) -> bool:
    """True iff no geodesic of ``g`` contains ``k`` edges of ``s``."""
    _check_k(k)
    return max_marked_on_common_geodesic(g, s, d) <= k - 1


def is_matching(g: Graph, s: Iterable[Sequence[int]]) -> bool:
    seen: set[int] = set()
    for u, v in g.edge_set(s):
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


@dataclass(frozen=True)
class MatchingDiameterReport:
    k: int
    diameter: int
    diameter_small: bool  # diam <= 2k - 2
    all_matchings_kgp: bool
    matchings_checked: int
    counterexample: tuple[Edge, ...] | None  # a k-matching lying on one geodesic
    counterexample_geodesic: GeodesicPath | None

    @property
    def equivalence_holds(self) -> bool:
        return self.diameter_small == self.all_matchings_kgp


def _matchings(edges: Sequence[Edge], k: int):
    def rec(start, chosen, used):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for i in range(start, len(edges) - (k - len(chosen)) + 1):
            u, v = edges[i]
            if u in used or v in used:
                continue
            chosen.append(edges[i])
            yield from rec(i + 1, chosen, used | {u, v})
            chosen.pop()

    yield from rec(0, [], frozenset())


def check_matching_diameter_equivalence(g: Graph, k: int, d: np.ndarray | None = None, budget: int | None = None) -> MatchingDiameterReport:
    """Exhaustively compare ``diam <= 2k-2`` with "every k-matching is an edge k-gp set"."""
    _check_k(k)
    budget = default_budget() if budget is None else budget
    if comb(g.m, k) > budget:
        raise BudgetExceededError(
            f"C({g.m}, {k}) = {comb(g.m, k)} candidate edge subsets exceeds budget {budget}",
            reached=0,
        )
    d = _dist(g, d)
    diam = diameter(d)
    checked = 0
    for mt in _matchings(g.edges, k):
        checked += 1
        scan = scan_common_geodesic(g, mt, d)
        if scan.max_marked >= k:
            return MatchingDiameterReport(k, diam, diam <= 2 * k - 2, False, checked, mt, scan.witness)
    return MatchingDiameterReport(k, diam, diam <= 2 * k - 2, True, checked, None, None)


def edge_distance_extremes(g: Graph, s: Iterable[Sequence[int]], d: np.ndarray | None = None) -> tuple[int, int]:
    """``(min, max)`` edge distance over distinct pairs of ``s``."""
    d = _dist(g, d)
    edges = sorted(g.edge_set(s))
    if len(edges) < 2:
        raise InvalidInputError("need at least two edges to define pairwise edge distances")
    dists = [edge_distance(g, d, e, f) for e, f in combinations(edges, 2)]
    return min(dists), max(dists)


def edge_spread_sufficient(g: Graph, s: Iterable[Sequence[int]], k: int, d: np.ndarray | None = None) -> bool:
    """Distance test ``L < l(k-1) + (k-2)``; a True answer guarantees ``s`` is edge k-gp."""
    lo, hi = edge_distance_extremes(g, s, d)
    return hi < lo * (k - 1) + (k - 2)


def path_distance(d: np.ndarray, p: GeodesicPath, q: GeodesicPath) -> int:
    return vertex_set_distance(d, p.vertices, q.vertices)


def paths_on_common_geodesic(g: Graph, paths: Sequence[GeodesicPath], d: np.ndarray | None = None) -> bool:
    """Direct test: do the (edge-disjoint) ``paths`` all lie on one geodesic?"""
    union = set().union(*(p.edges for p in paths))
    return max_marked_on_common_geodesic(g, union, d) == sum(p.length for p in paths)


def path_spacing_sufficient(g: Graph, paths: Sequence[GeodesicPath], j: int, k: int, d: np.ndarray | None = None) -> bool:
    """Sufficient test that no ``k`` of the given ``j``-geodesics lie on a common geodesic.

    Only pairs that themselves lie on a common geodesic are constrained.
    """
    if k < 2:
        raise InvalidInputError("k must be at least 2")
    d = _dist(g, d)
    paths = [p if isinstance(p, GeodesicPath) else GeodesicPath(tuple(p)) for p in paths]
    seen: set[Edge] = set()
    for p in paths:
        if p.length != j:
            raise InvalidInputError(f"path {p.vertices} has length {p.length}, expected {j}")
        if not is_geodesic(g, d, p.vertices):
            raise InvalidInputError(f"path {p.vertices} is not a geodesic")
        if seen & p.edges:
            raise InvalidInputError("paths must be edge-disjoint")
        seen |= p.edges
    if len(paths) < 2:
        return True
    pair_dist = {(a, b): path_distance(d, paths[a], paths[b]) for a, b in combinations(range(len(paths)), 2)}
    ell = min(pair_dist.values())
    bound = ell * (k - 1) + j * (k - 2)
    for (a, b), dist in pair_dist.items():
        if paths_on_common_geodesic(g, (paths[a], paths[b]), d) and not dist < bound:
            return False
    return True


def _validated_paths(g: Graph, paths: Sequence, d: np.ndarray) -> list[GeodesicPath]:
    out = []
    for p in paths:
        p = p if isinstance(p, GeodesicPath) else GeodesicPath(tuple(p))
        if p.length < 1 or not is_geodesic(g, d, p.vertices):
            return []
        out.append(p)
    return out


def is_geodesic_cover(g: Graph, paths: Sequence, d: np.ndarray | None = None) -> bool:
    """Every listed path is a geodesic of positive length and together they cover E(G)."""
    d = _dist(g, d)
    checked = _validated_paths(g, paths, d)
    if len(checked) != len(paths):
        return False
    covered = set().union(*(p.edges for p in checked)) if checked else set()
    return covered == set(g.edges)


def is_geodesic_partition(g: Graph, paths: Sequence, d: np.ndarray | None = None) -> bool:
    """A geodesic cover whose path edge sets are pairwise disjoint."""
    d = _dist(g, d)
    if not is_geodesic_cover(g, paths, d):
        return False
    return sum(p.length for p in _validated_paths(g, paths, d)) == g.m
