import json
from math import ceil

import jsonschema
import pytest

from geopos import families as fam
from geopos.certificates import CERTIFICATE_SCHEMA, witness_from_dict
from geopos.checker import is_edge_kgp, is_geodesic_partition, max_marked_on_common_geodesic
from geopos.constructions import (
    benes_diametral_paths,
    benes_kgp,
    benes_path_partition,
    certify_exact,
    cycle_equidistant_kgp,
    cycle_halves_partition,
    hypercube_path_partition,
    hypercube_theta_kgp,
    torus_diametral_partition,
    torus_diametral_paths,
    torus_parallel_kgp,
)
from geopos.errors import InvalidInputError
from geopos.graph import diameter, edge_distance
from geopos.reproduce import lower_graph


def assert_sound(cert):
    """A verified certificate's flag must agree with an independent re-check."""
    assert cert.verified and all(cert.checks.values())
    jsonschema.validate(cert.to_dict(), CERTIFICATE_SCHEMA)
    back = witness_from_dict(json.loads(cert.to_json()))
    assert len(back) == cert.value


@pytest.mark.parametrize("r, t, size, gap", [(3, 1, 4, 1), (4, 1, 4, 3), (4, 2, 8, 1), (5, 3, 16, 1), (5, 2, 8, 3)])
def test_cycle_equidistant(r, t, size, gap):
    cert = cycle_equidistant_kgp(r, t)
    assert_sound(cert)
    assert cert.value == size
    g = fam.generate(fam.cycle(2**r))
    edges = sorted(cert.witness)
    gaps = {edge_distance(g, g.distances, a, b) for a, b in zip(edges, edges[1:])}
    assert gaps == {gap}
    assert is_edge_kgp(g, cert.witness, 2**t + 1)
    assert cert.max_marked == 2**t


@pytest.mark.parametrize("r, t", [(2, 1), (3, 2), (4, 3), (3, 0)])
def test_cycle_equidistant_enforces_hypothesis(r, t):
    with pytest.raises(InvalidInputError, match=r"2\^t <= 2\^\(r-1\) - 2"):
        cycle_equidistant_kgp(r, t)


def test_cycle_halves():
    cert = cycle_halves_partition(8)
    assert_sound(cert)
    assert cert.value == 2
    with pytest.raises(InvalidInputError):
        cycle_halves_partition(7)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_torus_diametral_partition(r):
    cert = torus_diametral_partition(r)
    assert_sound(cert)
    g = fam.generate(fam.torus(2 * r))
    assert cert.value == 4 * r == ceil(g.m / diameter(g.distances))
    assert all(p.length == 2 * r for p in cert.witness)
    assert is_geodesic_partition(g, cert.witness)
    assert sum(p.length for p in cert.witness) == 8 * r * r


def test_diagonal_vertices_are_path_midpoints():
    g, paths = torus_diametral_paths(4)
    for i, v in enumerate(fam.torus_diagonal_vertices(g)):
        assert paths[2 * i].vertices[4] == v == paths[2 * i + 1].vertices[4]


@pytest.mark.parametrize("r, t, size, k", [(3, 1, 32, 3), (4, 1, 64, 3), (4, 2, 128, 5)])
def test_torus_parallel_kgp(r, t, size, k):
    cert = torus_parallel_kgp(r, t)
    assert_sound(cert)
    assert cert.value == size
    assert cert.max_marked == k - 1
    g = fam.generate(fam.torus(2**r))
    rep = certify_exact(cert, torus_diametral_partition(2 ** (r - 1)), k, g)
    assert rep.exact and rep.lower == (k - 1) * rep.partition_size


def test_torus_parallel_uses_equidistant_columns():
    cert = torus_parallel_kgp(3, 1)
    g = fam.generate(fam.torus(8))
    horiz = sorted({fam.torus_coords(g, fam.torus_orient(g, e)[1])[0] for e in cert.witness if fam.torus_orient(g, e)[0] == "h"})
    assert horiz == [0, 4]


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_hypercube_path_partition(d):
    cert = hypercube_path_partition(d)
    assert_sound(cert)
    assert cert.value == 2 ** (d - 1)
    assert all(p.length == d for p in cert.witness)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_hypercube_theta_kgp_is_pinned_by_duality(d):
    part = hypercube_path_partition(d)
    g = fam.generate(fam.hypercube(d))
    for k in range(3, d + 2):
        cert = hypercube_theta_kgp(d, k)
        assert_sound(cert)
        assert cert.value == (k - 1) * 2 ** (d - 1)
        assert certify_exact(cert, part, k, g).exact


def test_hypercube_theta_kgp_range():
    with pytest.raises(InvalidInputError):
        hypercube_theta_kgp(3, 5)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_benes_path_partition(r):
    cert = benes_path_partition(r)
    assert_sound(cert)
    g = fam.generate(fam.benes(r))
    assert cert.value == 2 ** (r + 1) == ceil(g.m / diameter(g.distances))
    assert all(p.length == 2 * r for p in cert.witness)


def test_benes_paths_stay_in_their_half():
    g, paths = benes_diametral_paths(3)
    rows = 8
    for i, p in enumerate(paths):
        levels = {v // rows for v in p.vertices}
        assert levels == (set(range(0, 4)) if i % 2 == 0 else set(range(3, 7)))


@pytest.mark.parametrize("r, k, size, marked", [(3, 3, 32, 2), (3, 5, 64, 4), (4, 3, 64, 2), (4, 5, 128, 4)])
def test_benes_kgp(r, k, size, marked):
    cert = benes_kgp(r, k)
    assert_sound(cert)
    assert cert.value == size
    assert cert.max_marked == marked
    g = fam.generate(fam.benes(r))
    assert certify_exact(cert, benes_path_partition(r), k, g).exact


def test_benes_kgp_rejects_unsupported_k():
    with pytest.raises(InvalidInputError, match=r"k in \{3, 5\}"):
        benes_kgp(3, 4)
    with pytest.raises(InvalidInputError):
        benes_kgp(2, 3)


def test_lower_graph_rebuilds_certificate_graph():
    cert = benes_kgp(3, 3)
    g = lower_graph(cert)
    assert max_marked_on_common_geodesic(g, cert.witness) == 2


def test_tampered_witness_is_caught():
    cert = cycle_equidistant_kgp(3, 1)
    g = fam.generate(fam.cycle(8))
    bad = set(cert.witness) | {(1, 2)}
    assert not is_edge_kgp(g, bad, 3)
    with pytest.raises(InvalidInputError):
        certify_exact(type(cert)(**{**cert.__dict__, "verified": False}), cycle_halves_partition(8), 3, g)
