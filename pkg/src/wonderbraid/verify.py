"""Machine checks of the structural results on concrete instances.

Each claim returns a status (``pass``/``fail``/``skipped``) with a small
detail dict.  Reports are deterministic: timings are kept out of the
report unless explicitly requested.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from wonderbraid.arrangement import Arrangement, is_braid, is_rbraid
from wonderbraid.building import (
    BuildingSet,
    NestedSetCapExceeded,
    blowup_schedule,
    check_building_set,
    enumerate_nested_sets,
    explicit_rbraid_building_set,
    maximal_building_set,
    minimal_building_set,
    schedule_is_inclusion_compatible,
)
from wonderbraid.graphs import (
    braid_partition_of_flat,
    enumerate_rn_graphs,
    GraphCapExceeded,
    flat_of_graph,
    gamma_count,
    gamma_leq,
    graph_of_flat,
    nontrivial_components,
    partition_to_flat,
    set_partitions,
)
from wonderbraid.lattice import (
    SCHEMA,
    IntersectionLattice,
    LatticeCapExceeded,
    finite_field_check,
    good_primes,
    intersection_lattice,
)
from wonderbraid.poset import IsomorphismTimeout, PosetTooLarge

DEFAULT_VERIFY_CAP = 1000
CHAIN_CHECK_LIMIT = 400

CAP_ERRORS = (LatticeCapExceeded, GraphCapExceeded, NestedSetCapExceeded, PosetTooLarge, IsomorphismTimeout)


@dataclass
class ClaimResult:
    claim: str
    status: str
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"claim": self.claim, "status": self.status, "detail": self.detail}
        if timings:
            out["elapsed_s"] = round(self.elapsed, 6)
        return out


def _run(name: str, fn: Callable[[], tuple[bool, dict]]) -> ClaimResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
        status = "pass" if ok else "fail"
    except CAP_ERRORS as exc:
        status, detail = "skipped", {"reason": str(exc)}
    return ClaimResult(name, status, detail, time.perf_counter() - t0)


def bell_number(m: int) -> int:
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def predicted_flat_count(a: Arrangement) -> int | None:
    if is_rbraid(a):
        return gamma_count(a.r, a.n)
    if is_braid(a):
        return bell_number(a.n + 1)
    return None


def chains(lat: IntersectionLattice) -> set[tuple[int, ...]]:
    """All chains of L minus the bottom (including the empty chain), by direct search."""
    elems = [f.id for f in lat if f.id != lat.bottom]
    out = {()}

    def grow(current, start):
        for i in range(start, len(elems)):
            y = elems[i]
            if all(lat.leq(c, y) for c in current):
                nxt = current + (y,)
                out.add(nxt)
                grow(nxt, i + 1)

    grow((), 0)
    return out


# -- individual claims


def claim_lattice_graph_iso(lat: IntersectionLattice):
    a = lat.arrangement
    gamma = enumerate_rn_graphs(a.r, a.n)
    graphs = [graph_of_flat(a, f) for f in lat]
    bijective = len(set(graphs)) == len(graphs) and set(graphs) == set(gamma.graphs)
    inverse = all(flat_of_graph(lat, g).id == f.id for g, f in zip(graphs, lat))
    order = all(
        lat.leq(x, y) == gamma_leq(graphs[x], graphs[y])
        for x in range(len(lat)) for y in range(len(lat))
    )
    formula = gamma_count(a.r, a.n)
    ok = bijective and inverse and order and len(lat) == len(gamma) == formula
    return ok, {"flats": len(lat), "graphs": len(gamma), "formula": formula,
                "bijective": bijective, "inverse": inverse, "order_preserving_and_reflecting": order}


def claim_indecomposable_criterion(lat: IntersectionLattice, gmin: BuildingSet):
    a = lat.arrangement
    mismatches = []
    for f in lat:
        if f.id == lat.bottom:
            continue
        one = len(nontrivial_components(graph_of_flat(a, f))) == 1
        if one != (f.id in gmin.members):
            mismatches.append(f.id)
    return not mismatches, {"flats_checked": len(lat) - 1, "indecomposable": len(gmin), "mismatches": mismatches}


def claim_explicit_building_set(lat: IntersectionLattice, gmin: BuildingSet):
    a = lat.arrangement
    explicit = [f.id for f in explicit_rbraid_building_set(a.r, a.n, lat)]
    geo = gmin.geometric_members
    return explicit == geo, {"explicit": len(explicit), "geometric_minimal": len(geo),
                             "projectively_empty_indecomposable": len(gmin) - len(geo)}


def claim_set_partitions(lat: IntersectionLattice):
    a = lat.arrangement
    parts = [braid_partition_of_flat(a, f) for f in lat]
    expected = bell_number(a.n + 1)
    bijective = len(set(parts)) == len(parts) == expected
    all_parts = {frozenset(frozenset(b) for b in p) for p in set_partitions(list(range(a.n + 1)))}
    onto = set(parts) == all_parts
    inverse = all(partition_to_flat(lat, p).id == f.id for p, f in zip(parts, lat))

    def refines(p, q):
        return all(any(b <= c for c in q) for b in p)

    order = all(lat.leq(x, y) == refines(parts[x], parts[y]) for x in range(len(lat)) for y in range(len(lat)))
    return bijective and onto and inverse and order, {
        "flats": len(lat), "bell": expected, "bijective": bijective and onto,
        "inverse": inverse, "order_is_refinement": order}


def claim_kapranov(lat: IntersectionLattice, gmin: BuildingSet):
    a = lat.arrangement
    n = a.n
    one_block = {f.id for f in lat if f.id != lat.bottom
                 and sum(len(b) > 1 for b in braid_partition_of_flat(a, f)) == 1}
    formula = 2 ** (n + 1) - n - 3
    geo = len(gmin.geometric_members)
    ok = one_block == set(gmin.members) and geo == formula
    return ok, {"geometric_minimal": geo, "formula": formula,
                "indecomposable_iff_one_block": one_block == set(gmin.members)}


def claim_building_axioms(lat: IntersectionLattice, gmin: BuildingSet):
    cmin = check_building_set(lat, gmin)
    cmax = check_building_set(lat, maximal_building_set(lat))
    removals_fail = []
    divergent = list(cmin.divergent) + list(cmax.divergent)
    for m in gmin.sorted_members():
        c = check_building_set(lat, gmin.without(m))
        divergent.extend(c.divergent)
        removals_fail.append(not c.valid)
    ok = cmin.valid and cmax.valid and all(removals_fail) and not divergent
    return ok, {"minimal_valid": cmin.valid, "maximal_valid": cmax.valid,
                "removals_checked": len(removals_fail), "removals_invalid": sum(removals_fail),
                "criterion_divergences": sorted(set(divergent))}


def claim_sandwich(lat: IntersectionLattice, gmin: BuildingSet, seed: int, samples: int = 30):
    rng = random.Random(seed)
    everything = [f.id for f in lat if f.id != lat.bottom]
    others = [x for x in everything if x not in gmin.members]
    passing = violations = 0
    for s in range(samples):
        family = s % 3
        if family == 0:
            members = {x for x in everything if rng.random() < 0.5}
        elif family == 1:
            members = set(gmin.members) | {x for x in others if rng.random() < 0.5}
        else:
            members = {x for x in everything if rng.random() < 0.9}
        g = BuildingSet(lat, frozenset(members))
        if check_building_set(lat, g).valid:
            passing += 1
            if not gmin.members <= g.members:
                violations += 1
    return violations == 0, {"samples": samples, "valid_samples": passing, "violations": violations}


def claim_chains(lat: IntersectionLattice):
    if len(lat) > CHAIN_CHECK_LIMIT:
        raise LatticeCapExceeded(f"{len(lat)} flats; chain check limited to {CHAIN_CHECK_LIMIT}")
    gmax = maximal_building_set(lat)
    nested = {s.members for s in enumerate_nested_sets(lat, gmax)}
    expected = chains(lat)
    return nested == expected, {"nested_sets": len(nested), "chains": len(expected)}


def claim_schedule(lat: IntersectionLattice, gmin: BuildingSet):
    results = {}
    for name, g in (("minimal", gmin), ("maximal", maximal_building_set(lat))):
        sched = blowup_schedule(g)
        results[name] = {"centers": len(sched.order), "compatible": schedule_is_inclusion_compatible(lat, sched)}
    return all(v["compatible"] for v in results.values()), results


def claim_divisors(lat: IntersectionLattice, gmin: BuildingSet):
    singles = [s for s in enumerate_nested_sets(lat, gmin, 1, geometric=True, include_empty=False)]
    return len(singles) == len(gmin.geometric_members), {
        "size_one_nested": len(singles), "geometric_minimal": len(gmin.geometric_members)}


def claim_charpoly(lat: IntersectionLattice, prime_floor: int, count: int = 3):
    a = lat.arrangement
    primes = [q for q in good_primes(a.r, prime_floor, count) if q ** a.n <= 10**8]
    if len(primes) < 2:
        raise LatticeCapExceeded("fewer than two primes within the enumeration cap")
    rows = finite_field_check(lat, primes)
    return all(r["equal"] for r in rows), {"checks": rows}


# -- driver


def instance_name(a: Arrangement) -> str:
    if is_rbraid(a):
        return f"rbraid({a.r},{a.n})"
    if is_braid(a):
        return f"braid({a.n})"
    return f"custom(r={a.r},n={a.n},hyperplanes={len(a)})"


def verify(a: Arrangement, *, threads: int = 1, cap: int = DEFAULT_VERIFY_CAP,
           prime_floor: int = 5, seed: int = 0) -> tuple[dict, list[ClaimResult]]:
    """Run every applicable claim on ``a``; returns (report header, claim results)."""
    header = {"schema": SCHEMA, "command": "verify", "instance": instance_name(a), "cap_flats": cap}
    rb, br = is_rbraid(a), is_braid(a)
    names = []
    if rb:
        names += ["lattice-graph-isomorphism", "indecomposable-iff-one-nontrivial-component",
                  "minimal-building-set-explicit"]
    if br:
        names += ["flats-are-set-partitions", "kapranov-minimal-building-set"]
    names += ["building-set-axioms", "building-set-sandwich", "maximal-nested-sets-are-chains",
              "blowup-schedule-inclusion-compatible", "divisor-count", "characteristic-polynomial-finite-field"]

    predicted = predicted_flat_count(a)
    lat = None
    reason = None
    if predicted is not None and predicted > cap:
        reason = f"predicted {predicted} flats exceeds the verify cap {cap}"
    else:
        try:
            lat = intersection_lattice(a, cap=cap, threads=threads)
        except LatticeCapExceeded as exc:
            reason = str(exc)
    if lat is None:
        return header, [ClaimResult(n, "skipped", {"reason": reason}) for n in names]

    gmin = minimal_building_set(lat, threads=threads)
    table = {
        "lattice-graph-isomorphism": lambda: claim_lattice_graph_iso(lat),
        "indecomposable-iff-one-nontrivial-component": lambda: claim_indecomposable_criterion(lat, gmin),
        "minimal-building-set-explicit": lambda: claim_explicit_building_set(lat, gmin),
        "flats-are-set-partitions": lambda: claim_set_partitions(lat),
        "kapranov-minimal-building-set": lambda: claim_kapranov(lat, gmin),
        "building-set-axioms": lambda: claim_building_axioms(lat, gmin),
        "building-set-sandwich": lambda: claim_sandwich(lat, gmin, seed),
        "maximal-nested-sets-are-chains": lambda: claim_chains(lat),
        "blowup-schedule-inclusion-compatible": lambda: claim_schedule(lat, gmin),
        "divisor-count": lambda: claim_divisors(lat, gmin),
        "characteristic-polynomial-finite-field": lambda: claim_charpoly(lat, prime_floor),
    }
    header["flats"] = len(lat)
    return header, [_run(n, table[n]) for n in names]


def report_json(header: dict, results: list[ClaimResult], timings: bool = False) -> dict:
    doc = dict(header)
    doc["claims"] = [r.to_json(timings) for r in results]
    doc["ok"] = not any(r.status == "fail" for r in results)
    return doc
