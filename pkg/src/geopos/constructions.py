"""Explicit witnesses for the closed-form values, each re-checked by the checker.

Builders never self-certify: every ``Certificate.verified`` flag is the
conjunction of independent predicate checks recorded in ``Certificate.checks``.
"""

from __future__ import annotations

from math import ceil

from . import families as fam
from .certificates import Certificate
from .checker import is_geodesic, is_geodesic_partition, scan_common_geodesic
from .errors import InvalidInputError
from .graph import Edge, GeodesicPath, Graph, canon_edge, diameter, edge_distance
from .solvers import duality_certify
from .theta import is_partial_cube, theta_union_kgp


def _require_power_params(r: int, t: int, min_r: int = 3) -> None:
    if r < min_r or t < 1 or 2**t > 2 ** (r - 1) - 2:
        raise InvalidInputError(f"need r >= {min_r}, t >= 1 and 2^t <= 2^(r-1) - 2; got r={r}, t={t}")


def _kgp_certificate(theorem: str, params: dict, g: Graph, s: frozenset, k: int, expected: int, extra: dict | None = None) -> Certificate:
    d = g.distances
    scan = scan_common_geodesic(g, s, d)
    checks = {"size": len(s) == expected, "kgp": scan.max_marked <= k - 1}
    checks.update(extra or {})
    return Certificate(
        theorem, params, len(s), s, all(checks.values()), "construction+checker",
        max_marked=scan.max_marked, pairs_swept=scan.pairs_swept, checks=checks,
    )


def _partition_certificate(theorem: str, params: dict, g: Graph, paths: list[GeodesicPath], expected: int, length: int | None, extra: dict | None = None) -> Certificate:
    d = g.distances
    checks = {
        "count": len(paths) == expected,
        "geodesic": all(is_geodesic(g, d, p.vertices) for p in paths),
        "partition": is_geodesic_partition(g, paths, d),
    }
    if length is not None:
        checks["length"] = all(p.length == length for p in paths)
    checks.update(extra or {})
    return Certificate(theorem, params, len(paths), tuple(paths), all(checks.values()), "construction+checker", checks=checks)


def _equidistant(n: int, count: int) -> list[Edge]:
    step = n // count
    return [canon_edge(j * step, (j * step + 1) % n) for j in range(count)]


def cycle_equidistant_kgp(r: int, t: int) -> Certificate:
    """``2^(t+1)`` evenly spread edges of ``C_(2^r)``; an edge ``(2^t + 1)``-gp set."""
    _require_power_params(r, t)
    g = fam.generate(fam.cycle(2**r))
    edges = _equidistant(2**r, 2 ** (t + 1))
    gap = 2 ** (r - t - 1) - 1
    gaps = [edge_distance(g, g.distances, a, b) for a, b in zip(edges, edges[1:])]
    return _kgp_certificate(
        "lemma-3.1", {"r": r, "t": t, "k": 2**t + 1}, g, frozenset(edges), 2**t + 1, 2 ** (t + 1),
        {"gaps": all(x == gap for x in gaps)},
    )


def cycle_halves_partition(n: int) -> Certificate:
    """The two antipodal arcs of an even cycle."""
    if n < 4 or n % 2:
        raise InvalidInputError(f"need an even cycle length >= 4, got {n}")
    g = fam.generate(fam.cycle(n))
    half = n // 2
    paths = [GeodesicPath(tuple(range(half + 1))), GeodesicPath(tuple(range(half, n)) + (0,))]
    return _partition_certificate("cycle-halves", {"n": n}, g, paths, 2, half)


def torus_diametral_paths(r: int) -> tuple[Graph, list[GeodesicPath]]:
    """Two diametral paths through each diagonal vertex of ``C_2r □ C_2r``.

    For ``v_i = (i, i)``: one path runs along row ``i`` from column ``i - r``
    to ``i`` and then up column ``i`` to row ``i + r``; the other runs up
    column ``i`` from row ``i - r`` and then along row ``i`` to column ``i + r``.
    """
    if r < 2:
        raise InvalidInputError(f"need r >= 2, got {r}")
    g = fam.generate(fam.torus(2 * r))
    vx = lambda a, b: fam.torus_vertex(g, a, b)  # noqa: E731
    paths = []
    for i in range(2 * r):
        first = [vx(a, i) for a in range(i - r, i + 1)] + [vx(i, b) for b in range(i + 1, i + r + 1)]
        second = [vx(i, b) for b in range(i - r, i + 1)] + [vx(a, i) for a in range(i + 1, i + r + 1)]
        paths += [GeodesicPath(tuple(first)), GeodesicPath(tuple(second))]
    return g, paths


def torus_diametral_partition(r: int) -> Certificate:
    g, paths = torus_diametral_paths(r)
    diag = fam.torus_diagonal_vertices(g)
    mids = all(paths[2 * i].vertices[r] == v == paths[2 * i + 1].vertices[r] for i, v in enumerate(diag))
    diam = diameter(g.distances)
    return _partition_certificate(
        "prop-3.2", {"r": r, "n": 2 * r}, g, paths, 4 * r, diam,
        {"midpoints": mids, "counting_bound": ceil(g.m / diam) == 4 * r},
    )


def torus_parallel_kgp(r: int, t: int) -> Certificate:
    """Parallel classes of ``2^t`` evenly spread horizontal and vertical edges of ``C_(2^r) □ C_(2^r)``.

    Consecutive chosen edges on a factor cycle are ``2^(r-t) - 1`` apart, the
    spacing forced by fitting ``2^t`` equidistant edges on a ``2^r``-cycle.
    """
    _require_power_params(r, t)
    n = 2**r
    g = fam.generate(fam.torus(n))
    d = g.distances
    chosen = set()
    for a, b in _equidistant(n, 2**t):
        horizontal = canon_edge(fam.torus_vertex(g, a, 0), fam.torus_vertex(g, b, 0))
        vertical = canon_edge(fam.torus_vertex(g, 0, a), fam.torus_vertex(g, 0, b))
        chosen |= fam.torus_parallel(g, horizontal, d)
        chosen |= fam.torus_parallel(g, vertical, d)
    return _kgp_certificate("thm-3.3", {"r": r, "t": t, "k": 2**t + 1}, g, frozenset(chosen), 2**t + 1, 2 ** (r + t + 1))


def hypercube_path_partition(dim: int) -> Certificate:
    """From each even-weight vertex, flip bits 1..d in order: ``2^(d-1)`` paths of length ``d``.

    An edge flipping bit ``i`` at ``x`` is step ``i`` of the path started at
    ``x`` or ``x ^ bit_i`` with bits ``1..i-1`` undone; exactly one has even weight.
    """
    if dim < 1:
        raise InvalidInputError(f"need d >= 1, got {dim}")
    g = fam.generate(fam.hypercube(dim))
    paths = []
    for v in range(1 << dim):
        if bin(v).count("1") % 2:
            continue
        walk = [v]
        for i in range(1, dim + 1):
            walk.append(walk[-1] ^ (1 << (dim - i)))
        paths.append(GeodesicPath(tuple(walk)))
    return _partition_certificate("thm-4.2", {"d": dim}, g, paths, 2 ** (dim - 1), dim)


def hypercube_theta_kgp(dim: int, k: int) -> Certificate:
    """Union of ``k - 1`` coordinate classes of ``Q_d``."""
    if not 3 <= k <= dim + 1:
        raise InvalidInputError(f"need 3 <= k <= d + 1, got d={dim}, k={k}")
    g = fam.generate(fam.hypercube(dim))
    s = theta_union_kgp(g, k)
    return _kgp_certificate("thm-4.2", {"d": dim, "k": k}, g, s, k, (k - 1) * 2 ** (dim - 1), {"partial_cube": is_partial_cube(g)})


def benes_diametral_paths(r: int) -> tuple[Graph, list[GeodesicPath]]:
    """For each row ``s``: cross edges up levels ``1..r`` then straight back down,
    in the lower butterfly and, mirrored, in the upper one."""
    if r < 2:
        raise InvalidInputError(f"need r >= 2, got {r}")
    g = fam.generate(fam.benes(r))
    top = (1 << r) - 1
    paths = []
    for s in range(1 << r):
        for base, step in ((0, 1), (2 * r, -1)):
            walk, row = [fam.benes_vertex(g, s, base)], s
            for j in range(1, r + 1):
                level = base + step * j
                row ^= fam.benes_bit(r, level if step > 0 else level + 1)
                walk.append(fam.benes_vertex(g, row, level))
            for j in range(r - 1, -1, -1):
                walk.append(fam.benes_vertex(g, s ^ top, base + step * j))
            paths.append(GeodesicPath(tuple(walk)))
    return g, paths


def benes_path_partition(r: int) -> Certificate:
    g, paths = benes_diametral_paths(r)
    diam = diameter(g.distances)
    return _partition_certificate(
        "thm-5.1", {"r": r}, g, paths, 2 ** (r + 1), 2 * r,
        {"diameter": diam == 2 * r, "counting_bound": ceil(g.m / diam) == 2 ** (r + 1)},
    )


def benes_kgp(r: int, k: int) -> Certificate:
    """Edges at the degree-2 levels (``k = 3``), plus those at the middle level (``k = 5``)."""
    if k not in (3, 5):
        raise InvalidInputError(f"a Benes edge k-gp construction is only known for k in {{3, 5}}, got k={k}")
    if r < 3:
        raise InvalidInputError(f"need r >= 3, got {r}")
    g = fam.generate(fam.benes(r))
    levels = (0, 2 * r) if k == 3 else (0, r, 2 * r)
    hit = {v for lv in levels for v in fam.benes_level_vertices(g, lv)}
    s = frozenset(e for e in g.edges if e[0] in hit or e[1] in hit)
    return _kgp_certificate("thm-5.2", {"r": r, "k": k}, g, s, k, (k - 1) * 2 ** (r + 1))


def certify_exact(lower: Certificate, partition: Certificate, k: int, g: Graph):
    """Pin ``k-gp``, ``gcover`` and ``gpart`` when ``|S| = (k-1) * |partition|``."""
    if not (lower.verified and partition.verified):
        raise InvalidInputError("both certificates must be verified before duality")
    return duality_certify(g, k, lower.witness, partition.witness)
