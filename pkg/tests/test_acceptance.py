"""One test per acceptance criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``; the lines also appear in
the "acceptance criteria" section of the terminal summary.
"""

import time
from contextlib import contextmanager
from math import ceil

import numpy as np

from geopos import families as fam
from geopos.checker import check_matching_diameter_equivalence, scan_common_geodesic
from geopos.constructions import (
    benes_kgp,
    benes_path_partition,
    certify_exact,
    cycle_equidistant_kgp,
    cycle_halves_partition,
    hypercube_path_partition,
    hypercube_theta_kgp,
    torus_diametral_partition,
    torus_parallel_kgp,
)
from geopos.corpus import matching_corpus, random_connected_graphs
from geopos.graph import diameter
from geopos.reproduce import PARTIAL_CUBE_EXPECTATIONS, named_graph, oracle_check
from geopos.solvers import gcover_exact, gpart_exact, kgp_exact
from geopos.theta import is_partial_cube, theta_classes


@contextmanager
def criterion(log, number, title, limit_s):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit_s, f"took {elapsed:.2f}s, limit {limit_s}s"
    except AssertionError as exc:
        line = f"[FAIL] criterion {number}: {title} ({exc})"
        log.append(line)
        print(line)
        raise
    line = f"[PASS] criterion {number}: {title} ({elapsed:.2f}s, limit {limit_s}s)"
    log.append(line)
    print(line)


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_1_cycle_equidistant(acceptance_log):
    with criterion(acceptance_log, 1, "cycle equidistant edge sets: exact 3-gp(C_8) = 4, witnesses 4, 4, 8", 60):
        res, took = timed(lambda: kgp_exact(fam.generate(fam.cycle(8)), 3))
        assert res.optimum == 4 and took < 1
        for (r, t), value in zip([(3, 1), (4, 1), (4, 2)], [4, 4, 8]):
            cert = cycle_equidistant_kgp(r, t)
            assert cert.verified and cert.value == value
            rep = certify_exact(cert, cycle_halves_partition(2**r), 2**t + 1, fam.generate(fam.cycle(2**r)))
            assert rep.exact


def test_criterion_2_torus_cover_and_partition(acceptance_log):
    with criterion(acceptance_log, 2, "C_4xC_4 gcover = gpart = 8; diametral partitions 8, 12, 16", 60):
        g = fam.generate("prod:cycle:4,cycle:4")
        assert gcover_exact(g).optimum == 8
        assert gpart_exact(g).optimum == 8
        for r, size in zip((2, 3, 4), (8, 12, 16)):
            cert = torus_diametral_partition(r)
            assert cert.verified and cert.value == size


def test_criterion_3_torus_parallel_sets(acceptance_log):
    with criterion(acceptance_log, 3, "torus parallel sets: C_8 k=3 32 (max 2); C_16 k=3 64, k=5 128 (max 4); duality exact; sweep < 2 min", 120):
        cases = [(3, 1, 3, 32, 2), (4, 1, 3, 64, 2), (4, 2, 5, 128, 4)]
        for r, t, k, size, marked in cases:
            cert = torus_parallel_kgp(r, t)
            assert cert.verified and cert.value == size and cert.max_marked == marked
            g = fam.generate(fam.torus(2**r))
            assert certify_exact(cert, torus_diametral_partition(2 ** (r - 1)), k, g).exact
        g16 = fam.generate(fam.torus(16))
        assert (g16.n, g16.m) == (256, 512)
        scan, took = timed(lambda: scan_common_geodesic(g16, torus_parallel_kgp(4, 2).witness, restrict=False))
        assert scan.max_marked == 4 and scan.pairs_swept == 256 * 255 and took < 120


def test_criterion_4_hypercube(acceptance_log):
    with criterion(acceptance_log, 4, "Q_d, d in 3..5, k in 3..d+1: Θ-union (k-1)2^(d-1), partition 2^(d-1), duality exact; exact Q_3 values 8 and 4", 120):
        for d in (3, 4, 5):
            part = hypercube_path_partition(d)
            assert part.verified and part.value == 2 ** (d - 1)
            g = fam.generate(fam.hypercube(d))
            for k in range(3, d + 2):
                cert = hypercube_theta_kgp(d, k)
                assert cert.verified and cert.value == (k - 1) * 2 ** (d - 1)
                assert certify_exact(cert, part, k, g).exact
        q3 = fam.generate(fam.hypercube(3))
        res, took = timed(lambda: kgp_exact(q3, 3))
        assert res.optimum == 8 and took < 60
        res, took = timed(lambda: gpart_exact(q3))
        assert res.optimum == 4 and took < 60


def test_criterion_5_benes_partition(acceptance_log):
    with criterion(acceptance_log, 5, "Benes path partitions 16 (r=3), 32 (r=4), length 2r, counting bound tight", 10):
        for r, size in ((3, 16), (4, 32)):
            cert = benes_path_partition(r)
            assert cert.verified and cert.value == size
            assert all(p.length == 2 * r for p in cert.witness)
            g = fam.generate(fam.benes(r))
            assert ceil(g.m / diameter(g.distances)) == 2 ** (r + 1) == size


def test_criterion_6_benes_kgp(acceptance_log):
    with criterion(acceptance_log, 6, "Benes edge k-gp: BN(3) 32 (max 2), 64 (max 4); BN(4) 64, 128; duality exact", 60):
        for r, k, size, marked in ((3, 3, 32, 2), (3, 5, 64, 4), (4, 3, 64, 2), (4, 5, 128, 4)):
            cert = benes_kgp(r, k)
            assert cert.verified and cert.value == size and cert.max_marked == marked
            assert certify_exact(cert, benes_path_partition(r), k, fam.generate(fam.benes(r))).exact


def test_criterion_7_matching_diameter_equivalence(acceptance_log):
    with criterion(acceptance_log, 7, "matching/diameter equivalence on all connected graphs with <= 6 vertices plus P_5, P_6, C_4..C_10, k in {3, 4}", 600):
        corpus = matching_corpus()
        # connected graphs on 2..6 vertices: 1 + 2 + 6 + 21 + 112
        assert len(corpus) == 142 + 2 + 7
        bad = [(name, k) for name, g in corpus for k in (3, 4) if not check_matching_diameter_equivalence(g, k).equivalence_holds]
        assert bad == [], f"counterexamples: {bad[:5]}"


def test_criterion_8_oracle_suite(acceptance_log):
    with criterion(acceptance_log, 8, "200 random graphs (m <= 18): exact 3-gp = brute force, sweep = enumeration, chain holds, spread test sound", 600):
        graphs = random_connected_graphs(200, 18, seed=20240917)
        assert len(graphs) == 200 and max(g.m for g in graphs) <= 18
        rng = np.random.default_rng(20240918)
        failures = [(i, tag) for i, g in enumerate(graphs) for tag in oracle_check(g, rng, k=3)]
        assert failures == [], f"failures: {failures[:5]}"


def test_criterion_9_partial_cubes(acceptance_log):
    with criterion(acceptance_log, 9, "partial-cube recognition: Q_1..Q_6, even C_4..C_12, C_4xC_4 true; C_5, K_2,3, K_4 false; Q_d has d classes of 2^(d-1)", 60):
        for name, want in PARTIAL_CUBE_EXPECTATIONS:
            assert is_partial_cube(named_graph(name)) == want, name
        for d in range(1, 7):
            assert theta_classes(fam.generate(fam.hypercube(d))).sizes() == [2 ** (d - 1)] * d
