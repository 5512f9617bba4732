"""Core graph representation, BFS distances and the edge-list file format."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import DisconnectedGraphError, InvalidInputError

Edge = tuple[int, int]
EdgeSet = frozenset  # frozenset[Edge]

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    """Budget cap for exhaustive work; ``GEOPOS_BUDGET`` overrides the default."""
    raw = os.environ.get("GEOPOS_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInputError(f"GEOPOS_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InvalidInputError("GEOPOS_BUDGET must be positive")
    return value


def canon_edge(u: int, v: int) -> Edge:
    if u == v:
        raise InvalidInputError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` is stored sorted in canonical ``(min, max)`` form. ``labels`` holds
    optional per-vertex coordinate tuples and ``family`` the generator spec; the
    metric code never looks at either.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[Any, ...] | None = None
    family: Any = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInputError("vertex count must be nonnegative")
        canon = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInputError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            canon.append(canon_edge(u, v))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise InvalidInputError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise InvalidInputError("labels must have one entry per vertex")
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def distances(self) -> np.ndarray:
        return all_pairs_distances(self)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return canon_edge(u, v) in self.edge_index

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_bfs(self.adjacency, 0)[1]) == self.n

    def edge_set(self, edges: Iterable[Sequence[int]]) -> frozenset[Edge]:
        """Canonicalize ``edges`` and check that each one belongs to this graph."""
        out = set()
        for e in edges:
            u, v = e
            c = canon_edge(int(u), int(v))
            if c not in self.edge_index:
                raise InvalidInputError(f"{c} is not an edge of the graph")
            out.add(c)
        return frozenset(out)

    def __repr__(self):
        tag = f", family={self.family}" if self.family is not None else ""
        return f"Graph(n={self.n}, m={self.m}{tag})"


def _bfs(adj, source: int) -> tuple[list[int], list[int]]:
    dist = [-1] * len(adj)
    dist[source] = 0
    order = [source]
    queue = deque([source])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dx
                order.append(y)
                queue.append(y)
    return dist, order


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Hop-count distance matrix via one BFS per vertex."""
    d = np.zeros((g.n, g.n), dtype=np.int64)
    adj = g.adjacency
    for s in range(g.n):
        dist, order = _bfs(adj, s)
        if len(order) != g.n:
            missing = next(v for v in range(g.n) if dist[v] < 0)
            raise DisconnectedGraphError(s, missing)
        d[s] = dist
    d.setflags(write=False)
    return d


def diameter(d: np.ndarray) -> int:
    return int(d.max()) if d.size else 0


def vertex_set_distance(d: np.ndarray, xs: Iterable[int], ys: Iterable[int]) -> int:
    xs, ys = list(xs), list(ys)
    return int(d[np.ix_(xs, ys)].min())


def edge_distance(g: Graph, d: np.ndarray, e: Edge, f: Edge) -> int:
    """Minimum distance between an endpoint of ``e`` and an endpoint of ``f``."""
    for x in (e, f):
        if not g.has_edge(*x):
            raise InvalidInputError(f"{tuple(x)} is not an edge of the graph")
    return min(int(d[a, b]) for a in e for b in f)


@dataclass(frozen=True)
class GeodesicPath:
    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(canon_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    def reversed(self) -> "GeodesicPath":
        return GeodesicPath(self.vertices[::-1])


def is_geodesic(g: Graph, d: np.ndarray, p: Sequence[int]) -> bool:
    """True iff ``p`` walks along edges of ``g`` and its length equals ``d(p[0], p[-1])``.

    Distinctness of vertices follows from the length condition.
    """
    p = list(p)
    if not p:
        return False
    if any(not (isinstance(v, (int, np.integer)) and 0 <= v < g.n) for v in p):
        return False
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            return False
    return int(d[p[0], p[-1]]) == len(p) - 1


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header plus ``m`` lines of ``u v`` format.

    Blank lines and ``#`` comments are ignored. Loops, duplicates (in either
    orientation) and a wrong edge count are rejected.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidInputError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InvalidInputError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise InvalidInputError("empty edge list: missing 'n m' header")
    (n, m), body = rows[0], rows[1:]
    if n < 0 or m < 0:
        raise InvalidInputError("header values must be nonnegative")
    if len(body) != m:
        raise InvalidInputError(f"header announces {m} edges, found {len(body)}")
    return Graph(n, tuple(body))


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))
