"""Exact desk-scale solvers and the brute-force oracles they are tested against.

Edge sets inside the search are Python ``int`` bitmasks indexed by
``Graph.edge_index``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Sequence

import numpy as np

from .checker import is_edge_kgp, is_geodesic_cover, is_geodesic_partition
from .errors import BudgetExceededError, CertificationError, InvalidInputError
from .graph import Edge, GeodesicPath, Graph, canon_edge, default_budget, diameter


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class GeodesicCatalog:
    """Geodesics of positive length, one per undirected edge set."""

    graph: Graph
    geodesics: tuple[GeodesicPath, ...]
    masks: tuple[int, ...]
    incidence: tuple[tuple[int, ...], ...]  # per edge index: geodesic indices
    maximal_only: bool

    def __len__(self):
        return len(self.geodesics)

    @property
    def max_length(self) -> int:
        return max((p.length for p in self.geodesics), default=0)


def path_mask(g: Graph, p: GeodesicPath) -> int:
    idx = g.edge_index
    mask = 0
    for e in p.edges:
        mask |= 1 << idx[e]
    return mask


def mask_edges(g: Graph, mask: int) -> frozenset[Edge]:
    return frozenset(g.edges[i] for i in _bits(mask))


def enumerate_geodesics(g: Graph, d: np.ndarray | None = None, *, maximal_only: bool = False, budget: int | None = None) -> GeodesicCatalog:
    """All geodesics by DFS over the BFS layers of every start vertex.

    A geodesic ``u..v`` is reported once, from its smaller end. With
    ``maximal_only`` only geodesics that cannot be extended by one edge at either
    end are kept; an extendable geodesic is exactly one whose edge set sits
    inside a longer geodesic's.
    """
    d = g.distances if d is None else d
    budget = default_budget() if budget is None else budget
    adj = g.adjacency
    steps = 0
    paths: list[GeodesicPath] = []
    for u in range(g.n):
        du = d[u].tolist()
        fwd = [[y for y in adj[x] if du[y] == du[x] + 1] for x in range(g.n)]
        stack = [(u,)]
        while stack:
            p = stack.pop()
            steps += 1
            if steps > budget:
                raise BudgetExceededError(f"geodesic enumeration exceeded budget {budget}", reached=len(paths))
            v = p[-1]
            if v > u:
                if not maximal_only or (not fwd[v] and not any(d[w, v] == du[v] + 1 for w in adj[u])):
                    paths.append(GeodesicPath(p))
            for y in reversed(fwd[v]):
                stack.append(p + (y,))
    paths.sort(key=lambda p: (-p.length, p.vertices))
    masks = tuple(path_mask(g, p) for p in paths)
    inc: list[list[int]] = [[] for _ in range(g.m)]
    for gi, mk in enumerate(masks):
        for i in _bits(mk):
            inc[i].append(gi)
    return GeodesicCatalog(g, tuple(paths), masks, tuple(tuple(x) for x in inc), maximal_only)


@dataclass(frozen=True)
class SolveResult:
    problem: str
    optimum: int
    witness: frozenset | tuple
    nodes_explored: int
    bound_used: str
    method: str
    params: dict = field(default_factory=dict)


class _Counter:
    def __init__(self, budget: int, problem: str):
        self.budget = budget
        self.problem = problem
        self.nodes = 0

    def tick(self, **bounds):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(f"{self.problem}: search exceeded budget of {self.budget} nodes", reached=self.nodes, **bounds)


def _conflicts(m: int, masks: Sequence[int]) -> list[int]:
    """Per edge: mask of edges sharing at least one catalog geodesic with it."""
    out = [0] * m
    for mk in masks:
        for i in _bits(mk):
            out[i] |= mk
    return out


def _independent_bound(unc: int, conflict: Sequence[int]) -> int:
    """Greedy set of uncovered edges no two on a common geodesic; each needs its own path."""
    count, blocked = 0, 0
    for i in _bits(unc):
        if not blocked >> i & 1:
            count += 1
            blocked |= conflict[i]
    return count


def gcover_exact(g: Graph, catalog: GeodesicCatalog | None = None, budget: int | None = None) -> SolveResult:
    """Minimum edge geodesic cover by iterative deepening over the cover size.

    Each round branches on the uncovered edge with fewest candidate geodesics
    and prunes with ``ceil(uncovered / longest)`` and a greedy independent-edge
    bound. Rounds below the optimum fail exhaustively, which proves optimality.
    """
    if g.m == 0:
        return SolveResult("gcover", 0, (), 0, "empty", "exact-bb")
    catalog = enumerate_geodesics(g, maximal_only=True, budget=budget) if catalog is None else catalog
    budget = default_budget() if budget is None else budget
    counter = _Counter(budget, "gcover")
    m, full = g.m, (1 << g.m) - 1
    masks = sorted(set(catalog.masks), key=lambda x: -_popcount(x))
    if _or_all(masks) != full:
        raise InvalidInputError("catalog does not cover every edge")
    longest = max(_popcount(x) for x in masks)
    cands = [[mk for mk in masks if mk >> i & 1] for i in range(m)]
    conflict = _conflicts(m, masks)

    greedy = _greedy_cover(full, masks, exact=False)
    lb = max(ceil(m / longest), _independent_bound(full, conflict))
    fail: dict[int, int] = {}
    chosen: list[int] = []

    def feasible(unc: int, slots: int) -> bool:
        counter.tick(lower=lb, upper=len(greedy))
        if not unc:
            return True
        if slots == 0 or ceil(_popcount(unc) / longest) > slots or fail.get(unc, -1) >= slots:
            return False
        if _independent_bound(unc, conflict) > slots:
            fail[unc] = max(fail.get(unc, -1), slots)
            return False
        e = min(_bits(unc), key=lambda i: len(cands[i]))
        for part in _undominated(mk & unc for mk in cands[e]):
            if feasible(unc & ~part, slots - 1):
                chosen.append(part)
                return True
        fail[unc] = max(fail.get(unc, -1), slots)
        return False

    for target in range(lb, len(greedy)):
        if feasible(full, target):
            paths = _paths_for(catalog, chosen)
            return _finish_cover(g, "gcover", paths, counter, f"ceil(m/{longest})={ceil(m / longest)}, independent-edge bound", exact=False)
        lb = target + 1
    paths = _paths_for(catalog, greedy)
    return _finish_cover(g, "gcover", paths, counter, f"greedy cover matched lower bound {lb}", exact=False)


def gpart_exact(g: Graph, catalog: GeodesicCatalog | None = None, budget: int | None = None) -> SolveResult:
    """Minimum edge geodesic partition (exact cover by geodesic edge sets).

    Needs the full catalog, since a partition may use non-maximal geodesics.
    """
    if g.m == 0:
        return SolveResult("gpart", 0, (), 0, "empty", "exact-cover")
    catalog = enumerate_geodesics(g, maximal_only=False, budget=budget) if catalog is None else catalog
    if catalog.maximal_only:
        raise InvalidInputError("partition search needs the full geodesic catalog")
    budget = default_budget() if budget is None else budget
    counter = _Counter(budget, "gpart")
    m, full = g.m, (1 << g.m) - 1
    masks = sorted(set(catalog.masks), key=lambda x: -_popcount(x))
    longest = max(_popcount(x) for x in masks)
    cands = [[mk for mk in masks if mk >> i & 1] for i in range(m)]
    conflict = _conflicts(m, masks)

    greedy = _greedy_cover(full, masks, exact=True)
    lb = max(ceil(m / longest), _independent_bound(full, conflict))
    fail: dict[int, int] = {}
    chosen: list[int] = []

    def feasible(unc: int, slots: int) -> bool:
        counter.tick(lower=lb, upper=len(greedy))
        if not unc:
            return True
        if slots == 0 or ceil(_popcount(unc) / longest) > slots or fail.get(unc, -1) >= slots:
            return False
        best_e, best_opts = -1, None
        for i in _bits(unc):
            opts = [mk for mk in cands[i] if mk & ~unc == 0]
            if best_opts is None or len(opts) < len(best_opts):
                best_e, best_opts = i, opts
                if len(opts) <= 1:
                    break
        for part in best_opts:
            if feasible(unc & ~part, slots - 1):
                chosen.append(part)
                return True
        fail[unc] = max(fail.get(unc, -1), slots)
        return False

    for target in range(lb, len(greedy)):
        if feasible(full, target):
            return _finish_cover(g, "gpart", _paths_for(catalog, chosen), counter, f"ceil(m/{longest})={ceil(m / longest)}, exhausted smaller sizes", exact=True)
        lb = target + 1
    return _finish_cover(g, "gpart", _paths_for(catalog, greedy), counter, f"greedy partition matched lower bound {lb}", exact=True)


def _or_all(masks) -> int:
    acc = 0
    for mk in masks:
        acc |= mk
    return acc


def _undominated(parts) -> list[int]:
    """Distinct nonzero masks, largest first, dropping any contained in a kept one."""
    kept: list[int] = []
    for p in sorted(set(parts), key=lambda x: -_popcount(x)):
        if p and not any(p & ~k == 0 for k in kept):
            kept.append(p)
    return kept


def _greedy_cover(full: int, masks: Sequence[int], *, exact: bool) -> list[int]:
    unc, out = full, []
    while unc:
        if exact:
            pick = max((mk for mk in masks if mk & ~unc == 0), key=_popcount)
        else:
            pick = max(masks, key=lambda mk: _popcount(mk & unc))
        out.append(pick)
        unc &= ~pick
    return out


def _paths_for(catalog: GeodesicCatalog, parts: Sequence[int]) -> tuple[GeodesicPath, ...]:
    """Map chosen masks back to catalog geodesics; trimmed masks map to a superset path."""
    by_mask = {mk: p for mk, p in zip(catalog.masks, catalog.geodesics)}
    out = []
    for part in parts:
        if part in by_mask:
            out.append(by_mask[part])
        else:
            out.append(next(p for mk, p in zip(catalog.masks, catalog.geodesics) if part & ~mk == 0))
    return tuple(sorted(out, key=lambda p: p.vertices))


def _finish_cover(g: Graph, problem: str, paths, counter: _Counter, bound: str, *, exact: bool) -> SolveResult:
    ok = is_geodesic_partition(g, paths) if exact else is_geodesic_cover(g, paths)
    if not ok:
        raise CertificationError(f"{problem} witness failed re-verification")
    return SolveResult(problem, len(paths), paths, counter.nodes, bound, "exact-cover" if exact else "exact-bb")


def kgp_exact(g: Graph, k: int, catalog: GeodesicCatalog | None = None, budget: int | None = None) -> SolveResult:
    """Maximum edge k-general position set by include/exclude branch-and-bound.

    Constraints come from the maximal geodesics only (a subpath never holds
    more marked edges than its extension). Edges are branched in order of
    decreasing catalog degree. The bound is ``sum(min(k-1, |P ∩ reachable|))``
    over a fixed geodesic cover, capped by ``|S| + remaining``.
    """
    if k < 3:
        raise InvalidInputError(f"k must be >= 3, got {k}")
    if g.m == 0:
        return SolveResult("kgp", 0, frozenset(), 0, "empty", "exact-bb", {"k": k})
    catalog = enumerate_geodesics(g, maximal_only=True, budget=budget) if catalog is None else catalog
    budget = default_budget() if budget is None else budget
    counter = _Counter(budget, "kgp")
    m = g.m
    masks = sorted(set(catalog.masks))
    inc_all = [[gi for gi, mk in enumerate(masks) if mk >> i & 1] for i in range(m)]
    order = sorted(range(m), key=lambda i: (-len(inc_all[i]), g.edges[i]))
    inc = [[gi for gi in inc_all[i] if _popcount(masks[gi]) >= k] for i in order]
    rest = [0] * (m + 1)
    for pos in range(m - 1, -1, -1):
        rest[pos] = rest[pos + 1] | (1 << order[pos])
    cover = _greedy_cover((1 << m) - 1, masks, exact=False)
    cap = k - 1
    counts = [0] * len(masks)
    best = [0, 0]  # size, mask

    def bound(sel: int, pos: int) -> int:
        reach = sel | rest[pos]
        return sum(min(cap, _popcount(p & reach)) for p in cover)

    root_bound = min(m, bound(0, 0))

    def dfs(pos: int, sel: int, size: int) -> None:
        counter.tick(lower=best[0], upper=root_bound, best=mask_edges(g, best[1]))
        if size > best[0]:
            best[0], best[1] = size, sel
        if pos == m or best[0] >= root_bound:
            return
        if size + m - pos <= best[0] or bound(sel, pos) <= best[0]:
            return
        gis = inc[pos]
        if all(counts[gi] < cap for gi in gis):
            for gi in gis:
                counts[gi] += 1
            dfs(pos + 1, sel | (1 << order[pos]), size + 1)
            for gi in gis:
                counts[gi] -= 1
        dfs(pos + 1, sel, size)

    dfs(0, 0, 0)
    witness = mask_edges(g, best[1])
    if not is_edge_kgp(g, witness, k):
        raise CertificationError("kgp witness failed re-verification")
    return SolveResult("kgp", best[0], witness, counter.nodes, f"geodesic-cover bound (root {root_bound})", "exact-bb", {"k": k})


# ------------------------------------------------------------- oracles ----


def kgp_brute_force(g: Graph, k: int, catalog: GeodesicCatalog | None = None, max_edges: int = 22) -> SolveResult:
    """Scan every edge subset against every explicitly enumerated geodesic."""
    if k < 3:
        raise InvalidInputError(f"k must be >= 3, got {k}")
    if g.m > max_edges:
        raise BudgetExceededError(f"brute force over 2^{g.m} subsets refused (limit 2^{max_edges})", reached=0)
    catalog = enumerate_geodesics(g, maximal_only=False) if catalog is None else catalog
    subsets = np.arange(1 << g.m, dtype=np.int64)
    ok = np.ones(subsets.shape, dtype=bool)
    for mk, p in zip(catalog.masks, catalog.geodesics):
        if p.length >= k:
            ok &= np.bitwise_count(subsets & mk) <= k - 1
    sizes = np.where(ok, np.bitwise_count(subsets).astype(np.int16), -1)
    best = int(np.argmax(sizes))
    return SolveResult("kgp", int(sizes[best]), mask_edges(g, best), 1 << g.m, "exhaustive", "brute-oracle", {"k": k})


def max_marked_brute_force(g: Graph, s, catalog: GeodesicCatalog | None = None) -> int:
    """``max |S ∩ E(P)|`` over an explicit list of all geodesics."""
    catalog = enumerate_geodesics(g, maximal_only=False) if catalog is None else catalog
    s = {canon_edge(*e) for e in s}
    return max((len(s & p.edges) for p in catalog.geodesics), default=0)


# -------------------------------------------------------------- duality ----


@dataclass(frozen=True)
class DualityReport:
    k: int
    lower: int  # |S| for a verified edge k-gp set, or an exact k-gp value
    cover_size: int | None
    partition_size: int
    exact: bool

    @property
    def chain(self) -> str:
        c = self.cover_size if self.cover_size is not None else "gcover"
        return f"{self.lower} <= {self.k - 1}*{c} <= {self.k - 1}*{self.partition_size}"


def duality_certify(g: Graph, k: int, kgp: int | frozenset | set, partition: Sequence[GeodesicPath], cover_value: int | None = None) -> DualityReport:
    """Check ``k-gp <= (k-1) gcover <= (k-1) gpart`` on verified witnesses.

    When the lower witness reaches ``(k-1) * |partition|`` all three quantities
    are pinned: ``k-gp = |S|`` and ``gcover = gpart = |partition|``.
    """
    if k < 3:
        raise InvalidInputError(f"k must be >= 3, got {k}")
    if isinstance(kgp, int):
        lower = kgp
    else:
        if not is_edge_kgp(g, kgp, k):
            raise InvalidInputError("lower-bound witness is not an edge k-gp set")
        lower = len(kgp)
    if not is_geodesic_partition(g, partition):
        raise InvalidInputError("upper-bound witness is not an edge geodesic partition")
    p = len(partition)
    if cover_value is not None:
        if cover_value > p:
            raise CertificationError(f"gcover {cover_value} exceeds a known partition of size {p}")
        if lower > (k - 1) * cover_value:
            raise CertificationError(f"{lower} > {k - 1}*{cover_value}: duality chain violated")
    if lower > (k - 1) * p:
        raise CertificationError(f"{lower} > {k - 1}*{p}: duality chain violated")
    return DualityReport(k, lower, cover_value, p, lower == (k - 1) * p)


def cover_lower_bound(g: Graph, d: np.ndarray | None = None) -> int:
    """``ceil(m / diam)``: every geodesic has at most ``diam`` edges."""
    d = g.distances if d is None else d
    diam = diameter(d)
    return ceil(g.m / diam) if diam else 0
