"""Deterministic generators for the graph families, with coordinate labels.

Vertex numbering:

* path / cycle: ``0..n-1`` along the path or cycle.
* hypercube ``Q_d``: the integer whose binary expansion is the bit string;
  bit ``i`` (1-based) is the ``i``-th most significant of the ``d`` bits.
* product ``G □ H`` (and torus ``n x m``): ``(g, h) -> g * |V(H)| + h``. In a
  torus the first coordinate ``a`` moves along horizontal edges, the second
  ``b`` along vertical edges.
* butterfly / Benes: ``[s, i] -> i * 2^r + s`` (level-major). Level ``i`` edges
  join levels ``i-1`` and ``i``; for ``i <= r`` the cross edge flips bit ``i``,
  for ``i > r`` it flips bit ``2r - i + 1`` (the mirror image).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, InvalidInputError
from .graph import Edge, Graph, canon_edge

KINDS = ("path", "cycle", "hypercube", "torus", "butterfly", "benes", "prod")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...] = ()
    factors: tuple["FamilySpec", ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown family {self.kind!r}")
        p = self.params
        if self.kind == "prod":
            if len(self.factors) != 2 or p:
                raise InvalidInputError("prod takes exactly two factor specs")
            return
        if self.factors:
            raise InvalidInputError(f"{self.kind} takes no factor specs")
        expected = 2 if self.kind == "torus" else 1
        if len(p) != expected:
            raise InvalidInputError(f"{self.kind} takes {expected} parameter(s), got {len(p)}")
        low = {"path": 2, "cycle": 3, "hypercube": 1, "torus": 3, "butterfly": 2, "benes": 2}[self.kind]
        if any(x < low for x in p):
            raise InvalidInputError(f"{self.kind} parameters must be >= {low}, got {p}")

    def __str__(self):
        if self.kind == "prod":
            return f"prod:{self.factors[0]},{self.factors[1]}"
        if self.kind == "torus":
            return f"torus:{self.params[0]}x{self.params[1]}"
        return f"{self.kind}:{self.params[0]}"


def path(n: int) -> FamilySpec:
    return FamilySpec("path", (n,))


def cycle(n: int) -> FamilySpec:
    return FamilySpec("cycle", (n,))


def hypercube(d: int) -> FamilySpec:
    return FamilySpec("hypercube", (d,))


def torus(n: int, m: int | None = None) -> FamilySpec:
    return FamilySpec("torus", (n, n if m is None else m))


def butterfly(r: int) -> FamilySpec:
    return FamilySpec("butterfly", (r,))


def benes(r: int) -> FamilySpec:
    return FamilySpec("benes", (r,))


def prod(a: FamilySpec, b: FamilySpec) -> FamilySpec:
    return FamilySpec("prod", factors=(a, b))


_SIMPLE = re.compile(r"^(path|cycle|hypercube|butterfly|benes):(\d+)$")
_TORUS = re.compile(r"^torus:(\d+)x(\d+)$")


def parse_spec(text: str) -> FamilySpec:
    """Parse ``path:n``, ``cycle:n``, ``hypercube:d``, ``torus:nxm``,
    ``butterfly:r``, ``benes:r`` or ``prod:<spec>,<spec>``.

    For nested products the split point is the leftmost comma for which both
    halves parse.
    """
    text = text.strip()
    if text.startswith("prod:"):
        body = text[5:]
        for i, ch in enumerate(body):
            if ch != ",":
                continue
            try:
                return prod(parse_spec(body[:i]), parse_spec(body[i + 1:]))
            except InvalidInputError:
                continue
        raise InvalidInputError(f"cannot split product spec {text!r}")
    if m := _SIMPLE.match(text):
        return FamilySpec(m.group(1), (int(m.group(2)),))
    if m := _TORUS.match(text):
        return torus(int(m.group(1)), int(m.group(2)))
    raise InvalidInputError(f"unrecognized family spec {text!r}")


def _bit(r: int, i: int) -> int:
    """Mask of bit ``i`` (1-based, most significant first) of an ``r``-bit string."""
    return 1 << (r - i)


def benes_bit(r: int, level: int) -> int:
    """Mask flipped by the cross edges of Benes level ``level`` (1..2r)."""
    return _bit(r, level if level <= r else 2 * r - level + 1)


def _leveled(r: int, levels: int, spec: FamilySpec) -> Graph:
    rows = 1 << r
    edges = []
    for level in range(1, levels + 1):
        mask = benes_bit(r, level)
        for s in range(rows):
            lo = (level - 1) * rows
            hi = level * rows
            edges.append((lo + s, hi + s))
            edges.append((lo + s, hi + (s ^ mask)))
    labels = tuple((s, i) for i in range(levels + 1) for s in range(rows))
    return Graph((levels + 1) * rows, tuple(edges), labels, spec)


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    kind, p = spec.kind, spec.params
    if kind == "path":
        n = p[0]
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)), tuple((i,) for i in range(n)), spec)
    if kind == "cycle":
        n = p[0]
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), tuple((i,) for i in range(n)), spec)
    if kind == "hypercube":
        dim = p[0]
        edges = [(x, x ^ _bit(dim, i)) for x in range(1 << dim) for i in range(1, dim + 1) if not x & _bit(dim, i)]
        labels = tuple(tuple((x >> (dim - i)) & 1 for i in range(1, dim + 1)) for x in range(1 << dim))
        return Graph(1 << dim, tuple(edges), labels, spec)
    if kind == "torus":
        g = _product(generate(cycle(p[0])), generate(cycle(p[1])))
        labels = tuple((a, b) for a in range(p[0]) for b in range(p[1]))
        return Graph(g.n, g.edges, labels, spec)
    if kind == "butterfly":
        return _leveled(p[0], p[0], spec)
    if kind == "benes":
        return _leveled(p[0], 2 * p[0], spec)
    g = _product(generate(spec.factors[0]), generate(spec.factors[1]))
    return Graph(g.n, g.edges, g.labels, spec)


def _product(g: Graph, h: Graph) -> Graph:
    nh = h.n
    edges = []
    for a in range(g.n):
        for u, v in h.edges:
            edges.append((a * nh + u, a * nh + v))
    for u, v in g.edges:
        for b in range(nh):
            edges.append((u * nh + b, v * nh + b))
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = tuple((x, y) for x in g.labels for y in h.labels)
    return Graph(g.n * nh, tuple(edges), labels)


# ---------------------------------------------------------------- torus ----


def _torus_dims(g: Graph) -> tuple[int, int]:
    if g.family is None or g.family.kind != "torus":
        raise InvalidInputError("expected a graph generated as torus:nxm")
    return g.family.params


def torus_coords(g: Graph, v: int) -> tuple[int, int]:
    _, m = _torus_dims(g)
    return divmod(v, m)


def torus_vertex(g: Graph, a: int, b: int) -> int:
    n, m = _torus_dims(g)
    return (a % n) * m + (b % m)


def torus_orient(g: Graph, e: Edge) -> tuple[str, int, int]:
    """Classify ``e`` as ``"h"`` or ``"v"`` and orient it tail -> head along +1."""
    n, m = _torus_dims(g)
    x, y = e
    (a1, b1), (a2, b2) = torus_coords(g, x), torus_coords(g, y)
    if b1 == b2:
        return ("h", x, y) if (a1 + 1) % n == a2 else ("h", y, x)
    return ("v", x, y) if (b1 + 1) % m == b2 else ("v", y, x)


def parallel_predicate(d: np.ndarray, x: tuple[int, int], y: tuple[int, int]) -> bool:
    """Four-distance test on oriented edges ``x = (x1, x2)``, ``y = (y1, y2)``."""
    x1, x2 = x
    y1, y2 = y
    return d[x1, y2] == d[x2, y1] == d[x1, y1] + 1 == d[x2, y2] + 1


def torus_parallel_by_coordinates(g: Graph, e: Edge) -> frozenset[Edge]:
    """All translates of ``e`` across the other factor (``e`` included)."""
    n, m = _torus_dims(g)
    kind, tail, _ = torus_orient(g, canon_edge(*e))
    a, b = torus_coords(g, tail)
    if kind == "h":
        return frozenset(canon_edge(torus_vertex(g, a, y), torus_vertex(g, a + 1, y)) for y in range(m))
    return frozenset(canon_edge(torus_vertex(g, x, b), torus_vertex(g, x, b + 1)) for x in range(n))


def torus_parallel(g: Graph, e: Edge, d: np.ndarray | None = None) -> frozenset[Edge]:
    """Parallel class of ``e``: ``{e}`` plus every ``f != e`` passing the distance test.

    Edges are oriented along the +1 direction of their factor before the test.
    The result is cross-checked against the coordinate characterization.
    """
    _torus_dims(g)
    e = canon_edge(*e)
    if not g.has_edge(*e):
        raise InvalidInputError(f"{e} is not an edge of the graph")
    d = g.distances if d is None else d
    _, et, eh = torus_orient(g, e)
    found = {e}
    for f in g.edges:
        if f == e:
            continue
        _, ft, fh = torus_orient(g, f)
        if parallel_predicate(d, (et, eh), (ft, fh)):
            found.add(f)
    found = frozenset(found)
    if found != torus_parallel_by_coordinates(g, e):
        raise CertificationError(f"distance and coordinate parallel classes disagree for {e}")
    return found


def torus_diagonal_vertices(g: Graph) -> list[int]:
    n, m = _torus_dims(g)
    if n != m or n % 2:
        raise InvalidInputError(f"diagonal vertices need a square torus of even side, got {n}x{m}")
    return [torus_vertex(g, i, i) for i in range(n)]


# ---------------------------------------------------------------- Benes ----


def _benes_r(g: Graph) -> int:
    if g.family is None or g.family.kind != "benes":
        raise InvalidInputError("expected a graph generated as benes:r")
    return g.family.params[0]


def benes_vertex(g: Graph, s: int, level: int) -> int:
    r = _benes_r(g)
    return level * (1 << r) + s


def benes_level_vertices(g: Graph, level: int) -> list[int]:
    r = _benes_r(g)
    if not 0 <= level <= 2 * r:
        raise InvalidInputError(f"vertex level must be in 0..{2 * r}, got {level}")
    rows = 1 << r
    return list(range(level * rows, (level + 1) * rows))


def benes_edge_tag(g: Graph, e: Edge) -> tuple[int, str]:
    """``(level, "straight" | "cross")`` for an edge of a Benes graph."""
    r = _benes_r(g)
    u, v = canon_edge(*e)
    (su, iu), (sv, iv) = divmod(u, 1 << r)[::-1], divmod(v, 1 << r)[::-1]
    return iv, "straight" if su == sv else "cross"


def benes_level_edges(g: Graph, level: int) -> frozenset[Edge]:
    r = _benes_r(g)
    if not 1 <= level <= 2 * r:
        raise InvalidInputError(f"edge level must be in 1..{2 * r}, got {level}")
    lo = set(benes_level_vertices(g, level - 1))
    return frozenset(e for e in g.edges if e[0] in lo)
