"""Regenerate every closed-form value as a table of machine-checked rows.

Rows are certified either by an explicit construction whose size meets the
duality or counting bound, or by an exact solver where the instance is small.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from . import constructions as con
from . import families as fam
from .checker import check_matching_diameter_equivalence, edge_spread_sufficient, max_marked_on_common_geodesic
from .corpus import matching_corpus, random_connected_graphs
from .errors import BudgetExceededError
from .graph import Graph
from .solvers import (
    cover_lower_bound,
    duality_certify,
    enumerate_geodesics,
    gcover_exact,
    gpart_exact,
    kgp_brute_force,
    kgp_exact,
    max_marked_brute_force,
)
from .theta import is_partial_cube, theta_classes


@dataclass
class ReproRow:
    theorem: str
    family: str
    params: dict
    quantity: str
    claimed: int
    computed: int | None
    method: str
    verified: bool
    wall_time: float | None = None
    note: str = ""

    @property
    def status(self) -> str:
        if self.computed is None:
            return "UNVERIFIED"
        return "ok" if self.verified else "REFUTED"

    def to_dict(self, timing: bool = False) -> dict:
        out = asdict(self)
        if not timing:
            out["wall_time"] = None
        return out


RowFn = Callable[[int | None], Iterable[ReproRow]]


def _row(theorem, family, params, quantity, claimed, computed, method, ok=True, note=""):
    return ReproRow(theorem, family, params, quantity, claimed, computed, method, bool(ok) and computed == claimed, note=note)


def _timed(fn: Callable[[], ReproRow]) -> ReproRow:
    t = time.perf_counter()
    row = fn()
    row.wall_time = round(time.perf_counter() - t, 4)
    return row


def _exact(theorem, family, params, quantity, claimed, solve) -> ReproRow:
    try:
        res = solve()
    except BudgetExceededError as exc:
        return ReproRow(theorem, family, params, quantity, claimed, None, "exact (budget exhausted)", False, note=str(exc))
    return _row(theorem, family, params, quantity, claimed, res.optimum, f"{res.method} ({res.nodes_explored} nodes)")


def _duality_row(theorem, family, params, claimed, lower, partition, k) -> ReproRow:
    g = lower_graph(lower)
    rep = duality_certify(g, k, lower.witness, partition.witness)
    ok = lower.verified and partition.verified and rep.exact
    return _row(theorem, family, params, f"{k}-gp_e", claimed, lower.value, "construction+duality", ok,
                note=f"{rep.chain}; max_marked={lower.max_marked}")


def lower_graph(cert) -> Graph:
    """Rebuild the graph a construction certificate refers to."""
    th, p = cert.theorem, cert.params
    if th == "lemma-3.1":
        return fam.generate(fam.cycle(2 ** p["r"]))
    if th == "thm-3.3":
        return fam.generate(fam.torus(2 ** p["r"]))
    if th == "thm-4.2":
        return fam.generate(fam.hypercube(p["d"]))
    if th == "thm-5.2":
        return fam.generate(fam.benes(p["r"]))
    raise KeyError(th)


def rows_cycle_equidistant(budget=None):
    yield _timed(lambda: _exact("lemma-3.1", "cycle:8", {"k": 3}, "3-gp_e", 4, lambda: kgp_exact(fam.generate(fam.cycle(8)), 3, budget=budget)))
    for r, t in ((3, 1), (4, 1), (4, 2)):
        def one(r=r, t=t):
            cert = con.cycle_equidistant_kgp(r, t)
            part = con.cycle_halves_partition(2**r)
            return _duality_row("lemma-3.1", f"cycle:{2 ** r}", {"r": r, "t": t}, 2 ** (t + 1), cert, part, 2**t + 1)
        yield _timed(one)


def rows_torus_partition(budget=None):
    g = fam.generate("prod:cycle:4,cycle:4")
    yield _timed(lambda: _exact("prop-3.2", "prod:cycle:4,cycle:4", {}, "gcover_e", 8, lambda: gcover_exact(g, budget=budget)))
    yield _timed(lambda: _exact("prop-3.2", "prod:cycle:4,cycle:4", {}, "gpart_e", 8, lambda: gpart_exact(g, budget=budget)))
    for r in (2, 3, 4):
        def one(r=r):
            cert = con.torus_diametral_partition(r)
            return _row("prop-3.2", f"torus:{2 * r}x{2 * r}", {"r": r}, "gpart_e = gcover_e", 4 * r, cert.value,
                        "construction+counting-bound", cert.verified, note=f"ceil(m/diam) = {4 * r}")
        yield _timed(one)


def rows_torus_parallel(budget=None):
    for r, t in ((3, 1), (4, 1), (4, 2)):
        def one(r=r, t=t):
            cert = con.torus_parallel_kgp(r, t)
            part = con.torus_diametral_partition(2 ** (r - 1))
            n = 2**r
            row = _duality_row("thm-3.3", f"torus:{n}x{n}", {"r": r, "t": t}, 2 ** (r + t + 1), cert, part, 2**t + 1)
            row.note += f"; factor-cycle gap 2^(r-t)-1 = {2 ** (r - t) - 1}"
            return row
        yield _timed(one)


def rows_hypercube(budget=None):
    for dim in (3, 4, 5):
        part = con.hypercube_path_partition(dim)
        yield _timed(lambda dim=dim, part=part: _row(
            "thm-4.2", f"hypercube:{dim}", {"d": dim}, "gpart_e = gcover_e", 2 ** (dim - 1), part.value,
            "construction+counting-bound", part.verified and cover_lower_bound(fam.generate(fam.hypercube(dim))) == part.value))
        for k in range(3, dim + 2):
            yield _timed(lambda dim=dim, k=k, part=part: _duality_row(
                "thm-4.2", f"hypercube:{dim}", {"d": dim, "k": k}, (k - 1) * 2 ** (dim - 1), con.hypercube_theta_kgp(dim, k), part, k))
    q3 = fam.generate(fam.hypercube(3))
    yield _timed(lambda: _exact("thm-4.2", "hypercube:3", {"k": 3}, "3-gp_e", 8, lambda: kgp_exact(q3, 3, budget=budget)))
    yield _timed(lambda: _exact("thm-4.2", "hypercube:3", {}, "gpart_e", 4, lambda: gpart_exact(q3, budget=budget)))


def rows_benes_partition(budget=None):
    for r in (3, 4):
        def one(r=r):
            cert = con.benes_path_partition(r)
            return _row("thm-5.1", f"benes:{r}", {"r": r}, "gpart_e = gcover_e", 2 ** (r + 1), cert.value,
                        "construction+counting-bound", cert.verified, note=f"ceil(m/diam) = {2 ** (r + 1)}")
        yield _timed(one)


def rows_benes_kgp(budget=None):
    for r in (3, 4):
        part = con.benes_path_partition(r)
        for k in (3, 5):
            yield _timed(lambda r=r, k=k, part=part: _duality_row(
                "thm-5.2", f"benes:{r}", {"r": r, "k": k}, (k - 1) * 2 ** (r + 1), con.benes_kgp(r, k), part, k))


def rows_matching_diameter(budget=None):
    corpus = matching_corpus()
    for k in (3, 4):
        def one(k=k):
            bad = [name for name, g in corpus if not check_matching_diameter_equivalence(g, k, budget=budget).equivalence_holds]
            return _row("prop-2.1", f"{len(corpus)} small graphs", {"k": k}, "graphs where both sides agree",
                        len(corpus), len(corpus) - len(bad), "exhaustive", not bad, note=", ".join(bad[:5]))
        yield _timed(one)


def oracle_check(g: Graph, rng: np.random.Generator, k: int = 3) -> list[str]:
    """Cross-check solvers and checker on ``g`` against brute force; return failure tags."""
    fails = []
    full = enumerate_geodesics(g)
    exact = kgp_exact(g, k)
    brute = kgp_brute_force(g, k, full)
    if exact.optimum != brute.optimum:
        fails.append("kgp")
    samples = [exact.witness, frozenset(g.edges)]
    for _ in range(4):
        size = int(rng.integers(1, g.m + 1))
        samples.append(frozenset(g.edges[i] for i in rng.choice(g.m, size, replace=False)))
    for s in samples:
        if max_marked_on_common_geodesic(g, s) != max_marked_brute_force(g, s, full):
            fails.append("max_marked")
        if len(s) >= 2 and edge_spread_sufficient(g, s, k) and max_marked_brute_force(g, s, full) > k - 1:
            fails.append("spread-condition")
    cover = gcover_exact(g).optimum
    part = gpart_exact(g, full).optimum
    if not (exact.optimum <= (k - 1) * cover <= (k - 1) * part):
        fails.append("duality")
    return fails


def rows_oracle(budget=None, count: int = 200, seed: int = 20240917):
    def one():
        rng = np.random.default_rng(seed + 1)
        graphs = random_connected_graphs(count, 18, seed)
        bad = [(i, f) for i, g in enumerate(graphs) for f in oracle_check(g, rng)]
        return _row("oracle", f"{count} random graphs, m <= 18", {"k": 3, "seed": seed}, "graphs agreeing with brute force",
                    count, count - len({i for i, _ in bad}), "brute-oracle", not bad, note="; ".join(f"#{i}:{f}" for i, f in bad[:5]))
    yield _timed(one)


PARTIAL_CUBE_EXPECTATIONS: list[tuple[str, bool]] = (
    [(f"hypercube:{d}", True) for d in range(1, 7)]
    + [(f"cycle:{n}", True) for n in range(4, 13, 2)]
    + [("prod:cycle:4,cycle:4", True), ("cycle:5", False), ("K2,3", False), ("K4", False)]
)


def named_graph(name: str) -> Graph:
    if name == "K2,3":
        return Graph(5, tuple((a, b) for a in (0, 1) for b in (2, 3, 4)))
    if name == "K4":
        return Graph(4, tuple(combinations(range(4), 2)))
    return fam.generate(name)


def rows_partial_cube(budget=None):
    def one():
        bad = [name for name, want in PARTIAL_CUBE_EXPECTATIONS if is_partial_cube(named_graph(name)) != want]
        for dim in range(1, 7):
            sizes = theta_classes(fam.generate(fam.hypercube(dim))).sizes()
            if sizes != [2 ** (dim - 1)] * dim:
                bad.append(f"hypercube:{dim} classes")
        n = len(PARTIAL_CUBE_EXPECTATIONS) + 6
        return _row("partial-cube", "recognition corpus", {}, "expectations met", n, n - len(bad), "winkler-criterion", not bad, note=", ".join(bad))
    yield _timed(one)


SCOPES: dict[str, RowFn] = {
    "lemma-3.1": rows_cycle_equidistant,
    "prop-3.2": rows_torus_partition,
    "thm-3.3": rows_torus_parallel,
    "thm-4.2": rows_hypercube,
    "thm-5.1": rows_benes_partition,
    "thm-5.2": rows_benes_kgp,
    "prop-2.1": rows_matching_diameter,
    "partial-cube": rows_partial_cube,
    "oracle": rows_oracle,
}


def reproduce(scope: str = "all", budget: int | None = None) -> list[ReproRow]:
    if scope == "all":
        names = list(SCOPES)
    elif scope in SCOPES:
        names = [scope]
    else:
        raise KeyError(f"unknown scope {scope!r}; choose from all, {', '.join(SCOPES)}")
    rows: list[ReproRow] = []
    for name in names:
        rows.extend(SCOPES[name](budget))
    return rows


def format_table(rows: list[ReproRow], timing: bool = False) -> str:
    header = ["theorem", "family", "params", "quantity", "claimed", "computed", "status", "method"]
    if timing:
        header.append("time[s]")
    body = []
    for r in rows:
        params = ",".join(f"{k}={v}" for k, v in r.params.items()) or "-"
        line = [r.theorem, r.family, params, r.quantity, str(r.claimed), "-" if r.computed is None else str(r.computed), r.status, r.method]
        if timing:
            line.append(f"{r.wall_time:.3f}" if r.wall_time is not None else "-")
        body.append(line)
    widths = [max(len(x[i]) for x in [header] + body) for i in range(len(header))]
    fmt = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    return "\n".join([fmt(header), fmt(["-" * w for w in widths])] + [fmt(b) for b in body]) + "\n"


def exit_code(rows: list[ReproRow]) -> int:
    if any(r.status == "REFUTED" for r in rows):
        return 2
    if any(r.status == "UNVERIFIED" for r in rows):
        return 3
    return 0
