import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wonderbraid.poset import (
    Poset,
    PosetTooLarge,
    boolean_lattice,
    chain,
    find_poset_isomorphism,
    is_poset_isomorphic,
)


def rank2(atoms):
    # bottom, `atoms` atoms, top
    k = atoms + 2
    return Poset(list(range(k)), lambda i, j: i == j or i == 0 or j == k - 1)


def test_chains():
    assert is_poset_isomorphic(chain(3), chain(3))
    assert not is_poset_isomorphic(chain(3), chain(4))


def test_rank_two_with_four_atoms_is_not_a_square():
    assert not is_poset_isomorphic(rank2(4), chain(2).product(chain(2)))
    assert is_poset_isomorphic(rank2(2), chain(2).product(chain(2)))


def test_boolean_lattice_is_product_of_chains():
    b3 = boolean_lattice(3)
    assert b3.size == 8
    assert is_poset_isomorphic(b3, chain(2).product(chain(2)).product(chain(2)))
    assert b3.ranks() == [bin(i).count("1") for i in range(8)]


def as_digraph(p):
    g = nx.DiGraph()
    g.add_nodes_from(range(p.size))
    g.add_edges_from((i, j) for i in range(p.size) for j in range(p.size) if i != j and p.leq(i, j))
    return g


@st.composite
def random_poset(draw):
    n = draw(st.integers(1, 7))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1])))
    g = nx.transitive_closure_dag(nx.DiGraph(list(edges)) if edges else nx.empty_graph(n, nx.DiGraph))
    g.add_nodes_from(range(n))
    return Poset(list(range(n)), lambda i, j: i == j or g.has_edge(i, j))


@settings(max_examples=80, deadline=None)
@given(random_poset(), random_poset(), st.randoms(use_true_random=False))
def test_isomorphism_agrees_with_networkx(p, q, rnd):
    expected = nx.is_isomorphic(as_digraph(p), as_digraph(q))
    assert is_poset_isomorphic(p, q) == expected
    perm = list(range(p.size))
    rnd.shuffle(perm)
    shuffled = Poset(perm, lambda i, j: p.leq(perm[i], perm[j]))
    m = find_poset_isomorphism(p, shuffled)
    assert m is not None
    assert all(p.leq(i, j) == shuffled.leq(m[i], m[j]) for i in range(p.size) for j in range(p.size))


def test_caps():
    with pytest.raises(PosetTooLarge):
        find_poset_isomorphism(chain(5), chain(5), cap=3)
