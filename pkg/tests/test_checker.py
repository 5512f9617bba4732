from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import connected_graphs, graph_and_edge_subset
from geopos.checker import (
    check_matching_diameter_equivalence,
    edge_distance_extremes,
    edge_spread_sufficient,
    geodesic_interval_dag,
    interval_max_marked,
    is_edge_kgp,
    is_geodesic_cover,
    is_geodesic_partition,
    is_matching,
    max_marked_on_common_geodesic,
    path_spacing_sufficient,
    paths_on_common_geodesic,
    scan_common_geodesic,
)
from geopos.errors import BudgetExceededError, InvalidInputError
from geopos.families import generate
from geopos.graph import GeodesicPath, is_geodesic
from geopos.solvers import max_marked_brute_force
from geopos.theta import theta_classes

C8_ALL = [(i, (i + 1) % 8) for i in range(8)]
C8_SPREAD = [(0, 1), (2, 3), (4, 5), (6, 7)]


@pytest.fixture(scope="module")
def c8():
    return generate("cycle:8")


@pytest.fixture(scope="module")
def q3():
    return generate("hypercube:3")


def test_interval_dag_on_cycle_antipodes(c8):
    arcs = geodesic_interval_dag(c8, None, 0, 4)
    assert len(arcs) == 8
    assert set(arcs) == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 7), (7, 6), (6, 5), (5, 4)}


def test_interval_dag_on_path_is_the_path():
    p5 = generate("path:5")
    assert geodesic_interval_dag(p5, None, 0, 4) == [(0, 1), (1, 2), (2, 3), (3, 4)]


def test_interval_dag_on_cube_is_whole_cube(q3):
    arcs = geodesic_interval_dag(q3, None, 0b000, 0b111)
    assert len(arcs) == 12
    # every arc sets exactly one more bit
    assert all(y == x | y and bin(x ^ y).count("1") == 1 for x, y in arcs)


def test_interval_dag_rejects_equal_endpoints(c8):
    with pytest.raises(InvalidInputError):
        geodesic_interval_dag(c8, None, 3, 3)


def test_max_marked_examples(c8, q3):
    assert max_marked_on_common_geodesic(c8, C8_ALL) == 4
    assert max_marked_on_common_geodesic(c8, C8_SPREAD) == 2
    assert max_marked_on_common_geodesic(c8, []) == 0
    for cls in theta_classes(q3).classes:
        assert max_marked_on_common_geodesic(q3, cls) == 1


def test_scan_witness_is_a_geodesic_carrying_the_maximum(c8):
    scan = scan_common_geodesic(c8, [(0, 1), (1, 2), (2, 3)])
    assert scan.max_marked == 3
    assert scan.witness.vertices == (0, 1, 2, 3)
    assert scan.sources_swept == 4
    assert scan.pairs_swept == 4 * 7


def test_scan_rejects_non_edges(c8):
    with pytest.raises(InvalidInputError):
        scan_common_geodesic(c8, [(0, 2)])


def test_is_edge_kgp_examples(c8):
    assert is_edge_kgp(c8, C8_SPREAD, 3)
    assert not is_edge_kgp(c8, C8_ALL, 3)
    assert is_edge_kgp(c8, C8_ALL, 5)
    with pytest.raises(InvalidInputError):
        is_edge_kgp(c8, C8_SPREAD, 2)


def test_is_matching(c8):
    assert is_matching(c8, C8_SPREAD)
    assert not is_matching(c8, [(0, 1), (1, 2)])
    assert is_matching(c8, [])


@pytest.mark.parametrize(
    "spec, k, small",
    [("path:5", 3, True), ("path:6", 3, False), ("cycle:4", 3, True), ("path:8", 3, False), ("cycle:12", 3, False), ("cycle:12", 4, True)],
)
def test_matching_diameter_equivalence_examples(spec, k, small):
    rep = check_matching_diameter_equivalence(generate(spec), k)
    assert rep.diameter_small == small
    assert rep.equivalence_holds
    if not small:
        assert rep.counterexample is not None
        assert len(rep.counterexample) == k
        assert set(rep.counterexample) <= rep.counterexample_geodesic.edges


def test_matching_check_respects_budget():
    with pytest.raises(BudgetExceededError):
        check_matching_diameter_equivalence(generate("hypercube:4"), 3, budget=10)


def test_spread_on_path():
    p10 = generate("path:10")
    s = [(0, 1), (4, 5), (8, 9)]
    assert edge_distance_extremes(p10, s) == (3, 7)
    assert not edge_spread_sufficient(p10, s, 3)
    assert not is_edge_kgp(p10, s, 3)


def test_spread_on_cycle_set_is_inconclusive(c8):
    # smallest gap 1, largest 3: the test needs 3 < 1*2 + 1 and so says nothing
    assert edge_distance_extremes(c8, C8_SPREAD) == (1, 3)
    assert not edge_spread_sufficient(c8, C8_SPREAD, 3)
    assert is_edge_kgp(c8, C8_SPREAD, 3)


def test_spread_positive_example():
    c12 = generate("cycle:12")
    s = [(0, 1), (4, 5), (8, 9)]
    assert edge_distance_extremes(c12, s) == (3, 3)
    assert edge_spread_sufficient(c12, s, 3)
    assert is_edge_kgp(c12, s, 3)


def test_spread_needs_two_edges(c8):
    with pytest.raises(InvalidInputError):
        edge_distance_extremes(c8, [(0, 1)])


def test_path_spacing_examples():
    p12 = generate("path:12")
    paths = [GeodesicPath((0, 1)), GeodesicPath((5, 6)), GeodesicPath((10, 11))]
    assert paths_on_common_geodesic(p12, paths)
    assert not path_spacing_sufficient(p12, paths, 1, 3)
    c12 = generate("cycle:12")
    spaced = [GeodesicPath((0, 1)), GeodesicPath((4, 5)), GeodesicPath((8, 9))]
    assert path_spacing_sufficient(c12, spaced, 1, 3)
    assert not paths_on_common_geodesic(c12, spaced)


def test_path_spacing_validates_inputs(c8):
    with pytest.raises(InvalidInputError):
        path_spacing_sufficient(c8, [GeodesicPath((0, 1, 2))], 1, 3)
    with pytest.raises(InvalidInputError):
        path_spacing_sufficient(c8, [GeodesicPath((0, 1)), GeodesicPath((1, 0))], 1, 3)
    with pytest.raises(InvalidInputError):
        path_spacing_sufficient(c8, [GeodesicPath((0, 1, 2, 3, 4, 5))], 5, 3)


def test_cover_and_partition_checks(c8):
    halves = [GeodesicPath((0, 1, 2, 3, 4)), GeodesicPath((4, 5, 6, 7, 0))]
    assert is_geodesic_partition(c8, halves)
    overlapping = halves + [GeodesicPath((3, 4, 5))]
    assert is_geodesic_cover(c8, overlapping)
    assert not is_geodesic_partition(c8, overlapping)
    assert not is_geodesic_cover(c8, halves[:1])
    assert not is_geodesic_cover(c8, [GeodesicPath((0, 1, 2, 3, 4, 5)), GeodesicPath((5, 6, 7, 0))])


@settings(max_examples=150, deadline=None)
@given(graph_and_edge_subset())
def test_sweep_matches_explicit_geodesic_enumeration(data):
    g, s = data
    assert max_marked_on_common_geodesic(g, s) == max_marked_brute_force(g, s)


@settings(max_examples=80, deadline=None)
@given(graph_and_edge_subset())
def test_restricted_sweep_equals_full_sweep(data):
    g, s = data
    a = scan_common_geodesic(g, s)
    b = scan_common_geodesic(g, s, restrict=False)
    assert a.max_marked == b.max_marked
    if s:
        assert is_geodesic(g, g.distances, a.witness.vertices)
        assert len(a.witness.edges & s) == a.max_marked


@settings(max_examples=60, deadline=None)
@given(graph_and_edge_subset(max_n=7), st.data())
def test_pairwise_interval_dp_agrees_with_sweep(data, draw):
    g, s = data
    assume(g.n >= 2)
    u, v = draw.draw(st.sampled_from(list(combinations(range(g.n), 2))))
    value, path = interval_max_marked(g, None, u, v, s)
    assert is_geodesic(g, g.distances, path.vertices)
    assert path.vertices[0] == u and path.vertices[-1] == v
    assert len(path.edges & s) == value
    best = max(interval_max_marked(g, None, a, b, s)[0] for a, b in combinations(range(g.n), 2))
    assert best == max_marked_on_common_geodesic(g, s)


@settings(max_examples=60, deadline=None)
@given(graph_and_edge_subset(), st.data())
def test_max_marked_is_monotone(data, draw):
    g, s = data
    t = frozenset(draw.draw(st.sets(st.sampled_from(sorted(s))))) if s else frozenset()
    assert max_marked_on_common_geodesic(g, t) <= max_marked_on_common_geodesic(g, s)


@settings(max_examples=150, deadline=None)
@given(graph_and_edge_subset(), st.integers(3, 5))
def test_spread_test_never_gives_false_positive(data, k):
    g, s = data
    assume(len(s) >= 2)
    if edge_spread_sufficient(g, s, k):
        assert is_edge_kgp(g, s, k)
        # the spacing test on single edges is at least as permissive
        assert path_spacing_sufficient(g, [GeodesicPath(e) for e in sorted(s)], 1, k)


@settings(max_examples=150, deadline=None)
@given(graph_and_edge_subset(), st.integers(3, 5))
def test_single_edge_spacing_test_is_sound(data, k):
    g, s = data
    if path_spacing_sufficient(g, [GeodesicPath(e) for e in sorted(s)], 1, k):
        assert is_edge_kgp(g, s, k)


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=3, max_n=7))
def test_interval_dag_arcs_lie_on_geodesics(g):
    d = g.distances
    for u, v in [(0, g.n - 1), (1, g.n - 2)]:
        if u == v:
            continue
        for x, y in geodesic_interval_dag(g, d, u, v):
            assert d[u, x] + 1 + d[y, v] == d[u, v]
