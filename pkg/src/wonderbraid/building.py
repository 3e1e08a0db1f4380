"""Building sets, nested sets and blow-up orders on an intersection lattice.

The candidate isomorphism throughout is the join map
``(y_1, ..., y_k) -> y_1 v ... v y_k`` from a product of lower intervals onto
a lower interval.  An abstract poset-isomorphism search is kept as a
fallback so disagreements between the two criteria can be reported.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, product

from wonderbraid import kernels
from wonderbraid.arrangement import r_braid_arrangement
from wonderbraid.cyclotomic import CycNum, zeta_pow
from wonderbraid.lattice import Flat, IntersectionLattice, intersection_lattice, interval
from wonderbraid.linalg import CycMatrix, rref, row_space_contains, nullspace
from wonderbraid.poset import Poset, find_poset_isomorphism

__all__ = [
    "BuildingSet",
    "BuildingSetCheck",
    "BlowupSchedule",
    "DecompositionWitness",
    "NestedSet",
    "NestedSetCapExceeded",
    "blowup_schedule",
    "check_building_set",
    "enumerate_nested_sets",
    "explicit_rbraid_building_set",
    "g_factors",
    "is_building_set",
    "is_decomposable",
    "is_nested",
    "join_map_isomorphic",
    "maximal_building_set",
    "minimal_building_set",
    "nested_set_report",
    "schedule_is_inclusion_compatible",
]

DEFAULT_NESTED_CAP = 10**6


class NestedSetCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DecompositionWitness:
    y1: int
    y2: int


@dataclass(frozen=True)
class BuildingSet:
    lattice: IntersectionLattice = field(repr=False, compare=False)
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if self.lattice.bottom in self.members:
            raise ValueError("a building set cannot contain the bottom flat")
        bad = [m for m in self.members if not 0 <= m < len(self.lattice)]
        if bad:
            raise ValueError(f"unknown flat ids {sorted(bad)}")

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self):
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    @property
    def geometric_members(self) -> list[int]:
        """Members that are nonempty in projective space."""
        return [m for m in sorted(self.members) if not self.lattice[m].proj_empty]

    def without(self, x: int) -> "BuildingSet":
        return BuildingSet(self.lattice, self.members - {x})

    def to_json(self) -> dict:
        return {"members": self.sorted_members(), "geometric_members": self.geometric_members}


# -- decomposability


def join_map_isomorphic(lat: IntersectionLattice, factors, x: int) -> bool:
    """Whether the join map from the product of [0, y] over ``factors`` onto [0, x] is an order isomorphism."""
    return kernels.join_map_is_isomorphism(
        lat.join_table, len(lat), lat.masks, [lat.down(y) for y in factors],
        x, len(lat.down(x)), lat.bottom, wide=lat.masks_wide,
    )


def is_decomposable(lat: IntersectionLattice, x: int) -> DecompositionWitness | None:
    """Smallest pair y1 < y2 < x whose join map onto [0, x] is an isomorphism, if any."""
    if x == lat.bottom:
        raise ValueError("the bottom flat is neither decomposable nor indecomposable")
    below = lat.down(x)
    size = len(below)
    rx = lat.rank(x)
    cands = [y for y in below if y != lat.bottom and y != x]
    for i, y1 in enumerate(cands):
        s1 = len(lat.down(y1))
        if size % s1:
            continue
        r1 = lat.rank(y1)
        for y2 in cands[i + 1:]:
            # an isomorphism of graded intervals preserves rank and size
            if r1 + lat.rank(y2) != rx or s1 * len(lat.down(y2)) != size:
                continue
            if lat.join(y1, y2) != x:
                continue
            if join_map_isomorphic(lat, (y1, y2), x):
                return DecompositionWitness(y1, y2)
    return None


def _map(fn, items, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


def minimal_building_set(lat: IntersectionLattice, threads: int = 1) -> BuildingSet:
    """All indecomposable flats, projectively empty ones included."""
    ids = [f.id for f in lat if f.id != lat.bottom]
    verdicts = _map(lambda x: is_decomposable(lat, x) is None, ids, threads)
    return BuildingSet(lat, frozenset(x for x, ok in zip(ids, verdicts) if ok))


def maximal_building_set(lat: IntersectionLattice) -> BuildingSet:
    return BuildingSet(lat, frozenset(f.id for f in lat if f.id != lat.bottom))


def g_factors(lat: IntersectionLattice, g: BuildingSet, x: int) -> tuple[int, ...]:
    """Maximal members of ``g`` lying below or at ``x``."""
    if x in g.members:
        return (x,)
    below = [y for y in lat.down(x) if y in g.members]
    return tuple(y for y in below if not any(lat.lt(y, z) for z in below))


@dataclass(frozen=True)
class BuildingSetCheck:
    valid: bool
    decided_by: str
    failed_at: int | None = None
    divergent: tuple[int, ...] = ()

    def __bool__(self):
        return self.valid


def _product_poset(lat: IntersectionLattice, factors) -> Poset:
    parts = [interval(lat, lat.bottom, y) for y in factors]
    if not parts:
        return Poset([()], lambda i, j: True)
    return reduce(Poset.product, parts)


def check_building_set(lat: IntersectionLattice, g: BuildingSet, *, iso_cap: int = 10_000,
                       timeout: float | None = None) -> BuildingSetCheck:
    """Check every flat's lower interval against the product over its g-factors.

    The join map is tried first.  If it fails, an abstract isomorphism search
    decides; flats where only the abstract criterion holds are listed in
    ``divergent``.
    """
    divergent = []
    for x in range(len(lat)):
        if x == lat.bottom or x in g.members:
            continue
        factors = g_factors(lat, g, x)
        if join_map_isomorphic(lat, factors, x):
            continue
        size = 1
        for y in factors:
            size *= len(lat.down(y))
        if size != len(lat.down(x)):
            return BuildingSetCheck(False, "abstract-isomorphism", x, tuple(divergent))
        target = interval(lat, lat.bottom, x)
        if find_poset_isomorphism(target, _product_poset(lat, factors), cap=iso_cap, timeout=timeout) is None:
            return BuildingSetCheck(False, "abstract-isomorphism", x, tuple(divergent))
        divergent.append(x)
    return BuildingSetCheck(True, "abstract-isomorphism" if divergent else "join-map", None, tuple(divergent))


def is_building_set(lat: IntersectionLattice, g: BuildingSet, **kwargs) -> bool:
    return check_building_set(lat, g, **kwargs).valid


# -- nested sets


def _antichain_joins_avoid(lat, gset, base, extra: int) -> bool:
    """True iff every antichain A of base + [extra] containing ``extra``, |A| >= 2, has join outside gset."""
    pool = [y for y in base if not lat.leq(y, extra) and not lat.leq(extra, y)]

    def grow(start, chosen, acc):
        for i in range(start, len(pool)):
            y = pool[i]
            if any(lat.leq(y, c) or lat.leq(c, y) for c in chosen):
                continue
            j = lat.join(acc, y)
            if j in gset:
                return False
            if not grow(i + 1, chosen + [y], j):
                return False
        return True

    return grow(0, [], extra)


def is_nested(lat: IntersectionLattice, g: BuildingSet, s) -> bool:
    s = sorted(set(s))
    extra = [x for x in s if x not in g.members]
    if extra:
        raise ValueError(f"flats {extra} are not in the building set")
    gset = g.members
    for i, x in enumerate(s):
        if not _antichain_joins_avoid(lat, gset, s[:i], x):
            return False
    return True


@dataclass(frozen=True)
class NestedSet:
    members: tuple[int, ...]
    building: BuildingSet | None = field(default=None, repr=False, compare=False)

    @property
    def codim(self) -> int:
        return len(self.members)


def enumerate_nested_sets(lat: IntersectionLattice, g: BuildingSet, max_size: int | None = None, *,
                          geometric: bool = False, include_empty: bool = True,
                          cap: int = DEFAULT_NESTED_CAP) -> list[NestedSet]:
    """Every nested subset of ``g`` (optionally of its projectively nonempty part).

    Sorted by size, then lexicographically.  Joins are always taken in the
    full lattice and tested against the full building set.
    """
    cands = g.geometric_members if geometric else g.sorted_members()
    gset = g.members
    out: list[tuple[int, ...]] = []
    if include_empty:
        out.append(())

    def extend(current: list[int], start: int):
        if max_size is not None and len(current) >= max_size:
            return
        for i in range(start, len(cands)):
            x = cands[i]
            if not _antichain_joins_avoid(lat, gset, current, x):
                continue
            current.append(x)
            out.append(tuple(current))
            if len(out) > cap:
                raise NestedSetCapExceeded(f"more than {cap} nested sets")
            extend(current, i + 1)
            current.pop()

    extend([], 0)
    out.sort(key=lambda t: (len(t), t))
    return [NestedSet(t, g) for t in out]


def nested_set_report(sets: list[NestedSet], include_sets: bool = False) -> dict:
    by_size: dict[int, int] = {}
    for s in sets:
        by_size[s.codim] = by_size.get(s.codim, 0) + 1
    report = {"by_size": {str(k): v for k, v in sorted(by_size.items())}}
    if include_sets:
        report["sets"] = [list(s.members) for s in sets]
    return report


# -- blow-up order


@dataclass(frozen=True)
class BlowupSchedule:
    order: tuple[int, ...]
    lin_dims: tuple[int, ...]

    def to_json(self) -> list[dict]:
        return [{"id": i, "lin_dim": d, "proj_dim": d - 1} for i, d in zip(self.order, self.lin_dims)]


def blowup_schedule(g: BuildingSet) -> BlowupSchedule:
    """Projectively nonempty members by increasing dimension, ties by id."""
    lat = g.lattice
    order = sorted(g.geometric_members, key=lambda x: (lat[x].lin_dim, x))
    return BlowupSchedule(tuple(order), tuple(lat[x].lin_dim for x in order))


def subspace_contained(a: Flat, b: Flat) -> bool:
    """Whether the subspace of ``a`` lies inside that of ``b``."""
    return row_space_contains(a.equations, b.equations)


def schedule_is_inclusion_compatible(lat: IntersectionLattice, sched: BlowupSchedule) -> bool:
    """No later center lies strictly inside an earlier one."""
    flats = [lat[x] for x in sched.order]
    for i, j in combinations(range(len(flats)), 2):
        if flats[i].id != flats[j].id and subspace_contained(flats[j], flats[i]):
            return False
    return True


# -- the explicit description for r-braid arrangements


def _span_flat(lat: IntersectionLattice, r: int, n: int, points) -> Flat | None:
    """Flat equal to the linear span of ``points``; None if they span everything."""
    m = CycMatrix.from_rows(r, points, n)
    if rref(m).rank == n:
        return None
    forms = nullspace(m)
    eq = rref(CycMatrix.from_rows(r, forms, n))
    try:
        return lat.flat_by_equations(eq)
    except KeyError:
        raise ValueError(f"span of {len(points)} points is not a flat of the lattice") from None


def explicit_rbraid_building_set(r: int, n: int, lat: IntersectionLattice | None = None) -> list[Flat]:
    """Spans of coordinate points, with or without one root-of-unity point.

    A root-of-unity point is taken up to a global rotation and up to its
    coordinates inside the chosen coordinate set, which do not affect the span.
    """
    if r < 2 or n < 1:
        raise ValueError("need r >= 2 and n >= 1")
    if lat is None:
        lat = intersection_lattice(r_braid_arrangement(r, n))
    zero, one = CycNum.zero(r), CycNum.one(r)

    def coord(i):
        return tuple(one if m == i else zero for m in range(n))

    found: dict[int, Flat] = {}
    for size in range(0, n + 1):
        for s in combinations(range(n), size):
            base = [coord(i) for i in s]
            if s:
                f = _span_flat(lat, r, n, base)
                if f is not None:
                    found[f.id] = f
            free = [i for i in range(n) if i not in s]
            if not free:
                continue
            for tail in product(range(r), repeat=len(free) - 1):
                a = [0] * n
                for i, k in zip(free[1:], tail):
                    a[i] = k
                pa = tuple(zeta_pow(r, k) for k in a)
                f = _span_flat(lat, r, n, base + [pa])
                if f is not None:
                    found[f.id] = f
    return [found[k] for k in sorted(found)]
