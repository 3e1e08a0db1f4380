from itertools import combinations
from math import comb

import pytest

from wonderbraid.arrangement import Arrangement, Hyperplane
from wonderbraid.building import (
    BuildingSet,
    blowup_schedule,
    check_building_set,
    enumerate_nested_sets,
    explicit_rbraid_building_set,
    g_factors,
    is_building_set,
    is_decomposable,
    is_nested,
    maximal_building_set,
    minimal_building_set,
    nested_set_report,
    schedule_is_inclusion_compatible,
    subspace_contained,
)
from wonderbraid.cyclotomic import CycNum
from wonderbraid.graphs import partition_to_flat
from wonderbraid.lattice import intersection_lattice, interval
from wonderbraid.poset import is_poset_isomorphic

from conftest import RBRAID_FIXTURES, SMALL_RBRAID, bgmin, blat, rgmax, rgmin, rlat
from oracles import subset_ranks


def two_lines():
    one, zero = CycNum.one(1), CycNum.zero(1)
    return intersection_lattice(Arrangement(1, 2, [Hyperplane((one, zero)), Hyperplane((zero, one))]))


def connected_restriction(lat, x):
    """Matroid connectivity of the hyperplanes through x, from numeric subset ranks."""
    ranks = subset_ranks(lat.arrangement)
    h = lat[x].hset
    total = ranks[h]
    first, rest = h[0], h[1:]
    for k in range(len(rest)):
        for extra in combinations(rest, k):
            a = tuple(sorted((first,) + extra))
            b = tuple(e for e in h if e not in a)
            if ranks[a] + ranks[b] == total:
                return False
    return True


ORACLE_LATTICES = [(rlat, (2, 2)), (rlat, (3, 2)), (rlat, (2, 3)), (rlat, (3, 3)), (blat, (2,)), (blat, (3,))]


@pytest.mark.parametrize("make,args", ORACLE_LATTICES, ids=lambda v: str(v) if isinstance(v, tuple) else "")
def test_decomposable_iff_disconnected(make, args):
    lat = make(*args)
    for f in lat:
        if f.id == lat.bottom:
            continue
        w = is_decomposable(lat, f.id)
        assert (w is None) == connected_restriction(lat, f.id)
        if w is not None:
            assert lat.join(w.y1, w.y2) == f.id
            assert lat[w.y1].rank + lat[w.y2].rank == f.rank


def test_decomposable_examples():
    lat = two_lines()
    w = is_decomposable(lat, lat.top)
    assert w is not None and {w.y1, w.y2} == set(lat.atoms())
    assert is_decomposable(blat(2), blat(2).top) is None
    for x in rlat(2, 3).atoms():
        assert is_decomposable(rlat(2, 3), x) is None


@pytest.mark.parametrize("r,n,size,geo", [(2, 2, 5, 4), (3, 2, 6, 5), (2, 3, 17, 16), (3, 3, 25, 24), (2, 4, 51, 50)])
def test_minimal_building_set_sizes(r, n, size, geo):
    g = rgmin(r, n)
    assert len(g.members) == size
    assert len(g.geometric_members) == geo


@pytest.mark.parametrize("n,geo", [(2, 3), (3, 10), (4, 25)])
def test_kapranov_sizes(n, geo):
    assert len(bgmin(n).geometric_members) == geo == 2 ** (n + 1) - n - 3
    assert len(bgmin(n).members) == geo + 1


def one_component_count(r, n):
    # flower on a nonempty proper subset, or one simple complete component
    return 2**n - 2 + sum(comb(n, k) * r ** (k - 1) for k in range(2, n + 1))


@pytest.mark.parametrize("r,n", RBRAID_FIXTURES)
def test_explicit_building_set(r, n):
    explicit = explicit_rbraid_building_set(r, n)
    assert sorted(f.id for f in explicit) == rgmin(r, n).geometric_members
    assert len(explicit) == one_component_count(r, n)


def test_explicit_examples():
    assert [len(explicit_rbraid_building_set(r, n)) for r, n in SMALL_RBRAID] == [4, 5, 16]
    lat = rlat(2, 2)
    points = {tuple(str(c) for row in f.equations.basis for c in row) for f in explicit_rbraid_building_set(2, 2, lat)}
    assert len(points) == 4


def test_maximal_building_set():
    assert len(maximal_building_set(blat(2)).members) == 4
    assert len(rgmax(2, 2).members) == 5
    assert len(rgmax(3, 2).members) == 6


def abstract_building_oracle(lat, members):
    """The definition: every [0, x] is the product of [0, g] over maximal g <= x in G."""
    for f in lat:
        x = f.id
        if x == lat.bottom:
            continue
        below = [g for g in members if lat.leq(g, x)]
        maxima = [g for g in below if not any(h != g and lat.leq(g, h) for h in below)]
        if not maxima:
            return False
        prod = interval(lat, lat.bottom, maxima[0])
        for g in maxima[1:]:
            prod = prod.product(interval(lat, lat.bottom, g))
        if not is_poset_isomorphic(prod, interval(lat, lat.bottom, x)):
            return False
    return True


@pytest.mark.parametrize("lat_fn", [lambda: rlat(2, 2), lambda: blat(2), lambda: rlat(3, 2), two_lines],
                         ids=["rb22", "b2", "rb32", "two-lines"])
def test_building_sets_exhaustively(lat_fn):
    lat = lat_fn()
    gmin = minimal_building_set(lat)
    elems = [f.id for f in lat if f.id != lat.bottom]
    for k in range(len(elems) + 1):
        for sub in combinations(elems, k):
            g = BuildingSet(lat, frozenset(sub))
            c = check_building_set(lat, g)
            assert c.valid == abstract_building_oracle(lat, sub)
            assert not c.divergent
            if c.valid:
                assert gmin.members <= g.members


@pytest.mark.parametrize("r,n", SMALL_RBRAID + [(3, 3)])
def test_building_axioms(r, n):
    lat, gmin = rlat(r, n), rgmin(r, n)
    assert is_building_set(lat, gmin)
    assert is_building_set(lat, rgmax(r, n))
    for m in gmin.sorted_members():
        assert not is_building_set(lat, gmin.without(m))


def test_braid2_minus_a_line_fails():
    lat, g = blat(2), bgmin(2)
    assert not is_building_set(lat, g.without(lat.atoms()[0]))


def test_g_factors():
    lat = two_lines()
    g = minimal_building_set(lat)
    assert set(g_factors(lat, g, lat.top)) == set(lat.atoms())
    assert g_factors(lat, bgmin(2), blat(2).top) == (blat(2).top,)
    assert g_factors(lat, g, lat.atoms()[0]) == (lat.atoms()[0],)


def nested_oracle(lat, gset, s):
    for k in range(2, len(s) + 1):
        for sub in combinations(s, k):
            antichain = all(not lat.leq(a, b) and not lat.leq(b, a) for a, b in combinations(sub, 2))
            if antichain and lat.join_all(sub) in gset:
                return False
    return True


@pytest.mark.parametrize("r,n", SMALL_RBRAID)
def test_nested_sets_against_definition(r, n):
    lat, g = rlat(r, n), rgmin(r, n)
    members = g.sorted_members()
    expected = {s for k in range(5) for s in combinations(members, k) if nested_oracle(lat, g.members, s)}
    got = {s.members for s in enumerate_nested_sets(lat, g, 4)}
    assert got == expected
    for s in list(expected)[:50]:
        assert is_nested(lat, g, s)


def chain_oracle(lat):
    elems = [f.id for f in lat if f.id != lat.bottom]
    out = set()
    for k in range(lat.n + 1):
        for s in combinations(elems, k):
            if all(lat.leq(a, b) or lat.leq(b, a) for a, b in combinations(s, 2)):
                out.add(s)
    return out


@pytest.mark.parametrize("r,n", SMALL_RBRAID)
def test_maximal_nested_sets_are_chains(r, n):
    lat = rlat(r, n)
    got = {s.members for s in enumerate_nested_sets(lat, rgmax(r, n))}
    assert got == chain_oracle(lat)


def test_nested_examples():
    lat = blat(2)
    gmax = maximal_building_set(lat)
    a1, a2 = lat.atoms()[:2]
    assert not is_nested(lat, gmax, (a1, a2))
    geo = enumerate_nested_sets(lat, gmax, geometric=True)
    assert [s.members for s in geo] == [()] + [(a,) for a in lat.atoms()]
    b3 = blat(3)
    x = partition_to_flat(b3, [{1, 2}, {0}, {3}]).id
    y = partition_to_flat(b3, [{0, 3}, {1}, {2}]).id
    assert is_nested(b3, bgmin(3), (x, y))
    singles = enumerate_nested_sets(rlat(2, 3), rgmin(2, 3), 1, include_empty=False)
    assert len(singles) == 17
    report = nested_set_report(enumerate_nested_sets(lat, gmax, geometric=True))
    assert report["by_size"] == {"0": 1, "1": 3}


def test_braid3_schedule():
    sched = blowup_schedule(bgmin(3))
    dims = [blat(3)[x].proj_dim for x in sched.order]
    assert dims == [0] * 4 + [1] * 6
    assert schedule_is_inclusion_compatible(blat(3), sched)


def all_schedules():
    for r, n in RBRAID_FIXTURES:
        yield rlat(r, n), rgmin(r, n)
        yield rlat(r, n), rgmax(r, n)
    for n in (2, 3, 4):
        yield blat(n), bgmin(n)


def test_schedules_are_inclusion_compatible():
    for lat, g in all_schedules():
        sched = blowup_schedule(g)
        assert sorted(sched.order) == g.geometric_members
        pos = {x: i for i, x in enumerate(sched.order)}
        for a in sched.order:
            for b in sched.order:
                if a != b and subspace_contained(lat[a], lat[b]):
                    assert pos[a] < pos[b]
        assert schedule_is_inclusion_compatible(lat, sched)


def test_rbraid22_schedule_is_points():
    sched = blowup_schedule(rgmin(2, 2))
    assert len(sched.order) == 4 and set(sched.lin_dims) == {1}


def test_schedule_rejects_bad_order():
    lat = rlat(2, 3)
    sched = blowup_schedule(rgmin(2, 3))
    flipped = type(sched)(tuple(reversed(sched.order)), tuple(reversed(sched.lin_dims)))
    assert not schedule_is_inclusion_compatible(lat, flipped)
