import json
import re
from itertools import combinations

import pytest

from wonderbraid.arrangement import braid_arrangement, r_braid_arrangement, rbraid_form
from wonderbraid.graphs import (
    GraphCapExceeded,
    RnGraph,
    braid_partition_of_flat,
    enumerate_rn_graphs,
    flat_of_graph,
    flower_graph,
    gamma_count,
    gamma_leq,
    graph_of_flat,
    nontrivial_components,
    partition_to_flat,
    set_partitions,
    validate_rn_graph,
    weighted_bell,
)
from wonderbraid.lattice import Flat
from wonderbraid.linalg import CycMatrix, rref

from conftest import RBRAID_FIXTURES, blat, rlat
from verify_helpers import bell

FIGURE_EDGES = (
    [(1, 3, k) for k in range(3)] + [(1, 1, 1), (1, 1, 2), (3, 3, 1), (3, 3, 2)]
    + [(2, 4, 1), (2, 6, 2), (4, 6, 1), (5, 7, 0)]
)


def test_figure_graph_is_valid():
    g = RnGraph(3, 7, frozenset(FIGURE_EDGES))
    ok, why = validate_rn_graph(g)
    assert ok, why
    comps = nontrivial_components(g)
    assert len(comps) == 3
    assert [c.flower for c in comps].count(True) == 1
    assert {c.vertices for c in comps} == {(1, 3), (2, 4, 6), (5, 7)}


def test_figure_graph_is_the_graph_of_its_flat():
    r, n = 3, 7
    rows = [rbraid_form(r, n, i, i, 1) for i in (1, 3)]
    rows += [rbraid_form(r, n, 2, 4, 1), rbraid_form(r, n, 2, 6, 2), rbraid_form(r, n, 5, 7, 0)]
    eq = rref(CycMatrix.from_rows(r, rows, n))
    x = Flat(-1, (), eq, n - eq.rank, False, 0)
    assert graph_of_flat(r_braid_arrangement(r, n), x) == RnGraph(r, n, frozenset(FIGURE_EDGES))


@pytest.mark.parametrize("edges", [
    [(1, 2, 1), (2, 3, 1), (1, 3, 1)],  # incompatible triangle
    [(1, 2, 0), (1, 2, 1)],  # partial flower: no self-edges
    [(1, 1, 1), (1, 2, 0)],  # partial flower: missing edge label and self-edge at 2
    [(1, 2, 0), (2, 3, 0)],  # not complete
    [(1, 1, 1), (2, 2, 1)],  # two flowers
])
def test_invalid_graphs(edges):
    ok, why = validate_rn_graph(RnGraph(2, 3, frozenset(edges)))
    assert not ok and why


def test_one_vertex_flower_is_valid():
    assert validate_rn_graph(RnGraph(2, 3, frozenset([(1, 1, 1)])))[0]


def test_r2_triangle_example():
    assert not validate_rn_graph(RnGraph(2, 3, frozenset([(1, 2, 1), (2, 3, 1), (1, 3, 1)])))[0]
    assert validate_rn_graph(RnGraph(2, 3, frozenset([(1, 2, 1), (2, 3, 1), (1, 3, 0)])))[0]


def test_graph_construction_errors():
    with pytest.raises(ValueError):
        RnGraph(2, 2, frozenset([(2, 1, 0)]))
    with pytest.raises(ValueError):
        RnGraph(2, 2, frozenset([(1, 1, 0)]))
    with pytest.raises(ValueError):
        RnGraph(2, 2, frozenset([(1, 2, 2)]))


def all_possible_edges(r, n):
    return [(i, j, k) for i in range(1, n + 1) for j in range(i, n + 1) for k in range(r) if not (i == j and k == 0)]


@pytest.mark.parametrize("r,n,count", [(2, 2, 6), (3, 2, 7), (2, 3, 24), (2, 4, 116)])
def test_raw_filter_oracle(r, n, count):
    edges = all_possible_edges(r, n)
    raw = set()
    for mask in range(1 << len(edges)):
        g = RnGraph(r, n, frozenset(e for b, e in enumerate(edges) if mask >> b & 1))
        if validate_rn_graph(g)[0]:
            raw.add(g)
    gamma = enumerate_rn_graphs(r, n)
    assert len(gamma) == len(set(gamma)) == len(raw) == count == gamma_count(r, n)
    assert set(gamma) == raw


def test_weighted_bell():
    assert [weighted_bell(2, m) for m in range(5)] == [1, 1, 3, 11, 49]
    assert [weighted_bell(1, m) for m in range(6)] == [bell(m) for m in range(6)]


def test_set_partitions_count():
    for m in range(7):
        parts = list(set_partitions(list(range(m))))
        assert len(parts) == bell(m)
        assert len({frozenset(frozenset(b) for b in p) for p in parts}) == bell(m)


@pytest.mark.parametrize("r,n", RBRAID_FIXTURES)
def test_lattice_graph_bijection(r, n):
    lat = rlat(r, n)
    a = lat.arrangement
    gamma = enumerate_rn_graphs(r, n)
    graphs = [graph_of_flat(a, f) for f in lat]
    assert set(graphs) == set(gamma)
    assert len(set(graphs)) == len(lat)
    for f, g in zip(lat, graphs):
        assert flat_of_graph(lat, g) == f
        assert set(f.hset) == {a.index(rbraid_form(r, n, i, j, k)) for i, j, k in g.edges}
    for x, y in combinations(range(len(lat)), 2):
        assert lat.leq(x, y) == gamma_leq(graphs[x], graphs[y])
        assert lat.leq(y, x) == gamma_leq(graphs[y], graphs[x])


def test_poset_structure():
    gamma = enumerate_rn_graphs(2, 2)
    assert gamma[gamma.bottom] == RnGraph.edgeless(2, 2)
    assert gamma[5] == flower_graph(2, 2)
    assert all(gamma.leq(gamma.bottom, i) and gamma.leq(i, 5) for i in range(len(gamma)))
    assert gamma.index(gamma[3]) == 3


def test_graph_cap():
    with pytest.raises(GraphCapExceeded):
        enumerate_rn_graphs(2, 6, cap=100)


def test_graph_json_and_dot():
    g = flower_graph(2, 2)
    assert RnGraph.from_json(json.loads(json.dumps(g.to_json()))) == g
    dot = g.to_dot()
    assert dot.startswith("graph")
    assert len(re.findall(r" -- ", dot)) == len(g.edges) == 4


def test_rbraid_only():
    with pytest.raises(ValueError):
        graph_of_flat(braid_arrangement(2), blat(2)[0])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_braid_flats_are_set_partitions(n):
    lat = blat(n)
    a = lat.arrangement
    parts = {braid_partition_of_flat(a, f) for f in lat}
    assert len(parts) == len(lat) == bell(n + 1)
    everything = {frozenset(frozenset(b) for b in p) for p in set_partitions(list(range(n + 1)))}
    assert parts == everything
    for f in lat:
        assert partition_to_flat(lat, braid_partition_of_flat(a, f)) == f
    # reverse inclusion of flats is refinement of partitions
    def coarser(p, q):
        return all(any(b <= c for c in q) for b in p)
    for f in lat:
        for g in lat:
            assert lat.leq(f.id, g.id) == coarser(braid_partition_of_flat(a, f), braid_partition_of_flat(a, g))
