"""(r, n)-graphs: edge-labelled graphs on vertices 1..n mirroring r-braid flats.

An edge is a triple ``(i, j, k)`` with ``1 <= i <= j <= n`` and ``k`` in Z_r,
meaning the flat lies in ``x_i = z^k x_j``.  A graph is valid when its
components are complete simple graphs with additive labels, plus at most one
complete r-flower (every label between each pair, labels 1..r-1 on loops).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterator

from wonderbraid.arrangement import Arrangement, is_braid, is_rbraid, rbraid_form
from wonderbraid.cyclotomic import CycNum
from wonderbraid.lattice import Flat, IntersectionLattice
from wonderbraid.linalg import CycMatrix, rref, row_space_contains

__all__ = [
    "RnGraph",
    "GammaPoset",
    "Component",
    "GraphCapExceeded",
    "DEFAULT_GRAPH_CAP",
    "validate_rn_graph",
    "enumerate_rn_graphs",
    "gamma_count",
    "weighted_bell",
    "graph_of_flat",
    "flat_of_graph",
    "components",
    "nontrivial_components",
    "gamma_leq",
    "flower_graph",
    "braid_partition_of_flat",
    "partition_to_flat",
    "set_partitions",
]

DEFAULT_GRAPH_CAP = 10**6


class GraphCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RnGraph:
    r: int
    n: int
    edges: frozenset[tuple[int, int, int]]

    def __post_init__(self):
        if self.r < 1 or self.n < 1:
            raise ValueError("need r >= 1 and n >= 1")
        edges = frozenset(tuple(e) for e in self.edges)
        for i, j, k in edges:
            if not (1 <= i <= j <= self.n):
                raise ValueError(f"edge {(i, j, k)} needs 1 <= i <= j <= {self.n}")
            if not 0 <= k < self.r:
                raise ValueError(f"label {k} outside Z_{self.r}")
            if i == j and k == 0:
                raise ValueError(f"self-edge at {i} cannot carry label 0")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def edgeless(cls, r: int, n: int) -> "RnGraph":
        return cls(r, n, frozenset())

    def labels(self, i: int, j: int) -> frozenset[int]:
        if i > j:
            i, j = j, i
        return frozenset(k for a, b, k in self.edges if a == i and b == j)

    def sorted_edges(self) -> list[tuple[int, int, int]]:
        return sorted(self.edges)

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, doc: dict) -> "RnGraph":
        return cls(doc["r"], doc["n"], frozenset(tuple(e) for e in doc["edges"]))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{", "  node [shape=circle];"]
        for v in range(1, self.n + 1):
            lines.append(f"  {v};")
        for i, j, k in self.sorted_edges():
            lines.append(f'  {i} -- {j} [label="{k}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def gamma_leq(g: RnGraph, h: RnGraph) -> bool:
    """Label-respecting edge inclusion."""
    if (g.r, g.n) != (h.r, h.n):
        raise ValueError("graphs have different (r, n)")
    return g.edges <= h.edges


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    nontrivial: bool
    flower: bool


def _components(g: RnGraph) -> list[tuple[int, ...]]:
    parent = list(range(g.n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j, _ in g.edges:
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(1, g.n + 1):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(vs) for vs in groups.values())


def components(g: RnGraph) -> list[Component]:
    """Connected components in order of least vertex; a lone vertex with loops is nontrivial."""
    out = []
    for verts in _components(g):
        vs = set(verts)
        cedges = [e for e in g.edges if e[0] in vs]
        flower = any(i == j for i, j, _ in cedges) or any(
            len(g.labels(i, j)) > 1 for i, j in combinations(verts, 2)
        )
        out.append(Component(verts, bool(cedges), flower))
    return out


def nontrivial_components(g: RnGraph) -> list[Component]:
    return [c for c in components(g) if c.nontrivial]


def validate_rn_graph(g: RnGraph) -> tuple[bool, str | None]:
    """(True, None) for a valid (r, n)-graph, else (False, first violation)."""
    r = g.r
    all_labels = frozenset(range(r))
    loop_labels = frozenset(range(1, r))
    flowers = []
    for comp in components(g):
        verts = comp.vertices
        if not comp.nontrivial:
            continue
        if comp.flower:
            for v in verts:
                if g.labels(v, v) != loop_labels:
                    return False, (f"flower component {list(verts)}: vertex {v} has self-edge labels "
                                   f"{sorted(g.labels(v, v))}, expected {sorted(loop_labels)}")
            for i, j in combinations(verts, 2):
                if g.labels(i, j) != all_labels:
                    return False, (f"flower component {list(verts)}: edge {{{i},{j}}} has labels "
                                   f"{sorted(g.labels(i, j))}, expected all of Z_{r}")
            flowers.append(verts)
            continue
        for i, j in combinations(verts, 2):
            if len(g.labels(i, j)) != 1:
                return False, f"component {list(verts)} is not complete: no edge {{{i},{j}}}"
        for i1, i2, i3 in combinations(verts, 3):
            (k12,), (k23,), (k13,) = g.labels(i1, i2), g.labels(i2, i3), g.labels(i1, i3)
            if (k12 + k23 - k13) % r:
                return False, (f"incompatible labels on {i1}<{i2}<{i3}: "
                               f"k{i1}{i3}={k13} but k{i1}{i2}+k{i2}{i3}={k12 + k23} mod {r}")
    if len(flowers) > 1:
        return False, f"{len(flowers)} flower components {[list(f) for f in flowers]}; at most one allowed"
    return True, None


# -- enumeration


def set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    """Set partitions of ``items``; blocks keep the input order. Deterministic."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + [list(b) for b in part]
        for idx in range(len(part)):
            yield [list(b) if m != idx else [first] + list(b) for m, b in enumerate(part)]


def _shortlex_subsets(n: int):
    for size in range(n + 1):
        yield from combinations(range(1, n + 1), size)


@lru_cache(maxsize=None)
def weighted_bell(r: int, m: int) -> int:
    """Sum over set partitions of [m] of prod_blocks r^(|block| - 1)."""
    if m == 0:
        return 1
    return sum(comb(m - 1, k - 1) * r ** (k - 1) * weighted_bell(r, m - k) for k in range(1, m + 1))


def gamma_count(r: int, n: int) -> int:
    return sum(comb(n, z) * weighted_bell(r, n - z) for z in range(n + 1))


def flower_graph(r: int, n: int, verts=None) -> RnGraph:
    verts = range(1, n + 1) if verts is None else verts
    return RnGraph(r, n, frozenset(_flower_edges(r, tuple(verts))))


def _flower_edges(r, verts):
    edges = [(v, v, k) for v in verts for k in range(1, r)]
    edges += [(i, j, k) for i, j in combinations(verts, 2) for k in range(r)]
    return edges


@dataclass(frozen=True)
class GammaPoset:
    r: int
    n: int
    graphs: tuple[RnGraph, ...]

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __getitem__(self, i):
        return self.graphs[i]

    def leq(self, i: int, j: int) -> bool:
        return gamma_leq(self.graphs[i], self.graphs[j])

    def index(self, g: RnGraph) -> int:
        return self._index[g]

    @cached_property
    def _index(self) -> dict[RnGraph, int]:
        return {g: i for i, g in enumerate(self.graphs)}

    @property
    def bottom(self) -> int:
        return self.index(RnGraph.edgeless(self.r, self.n))


def enumerate_rn_graphs(r: int, n: int, cap: int = DEFAULT_GRAPH_CAP) -> GammaPoset:
    """Every (r, n)-graph once: flower set (shortlex), then a set partition of
    the rest, then vertex potentials per block modulo a global shift.
    """
    if r < 2 or n < 1:
        raise ValueError("need r >= 2 and n >= 1")
    expected = gamma_count(r, n)
    if expected > cap:
        raise GraphCapExceeded(f"Gamma({r},{n}) has {expected} graphs, above the cap {cap}")
    out = []
    for z in _shortlex_subsets(n):
        flower = _flower_edges(r, z)
        rest = [v for v in range(1, n + 1) if v not in z]
        for part in set_partitions(rest):
            blocks = [sorted(b) for b in part]
            choices = []
            for b in blocks:
                # potential of the least vertex fixed at 0
                block_opts = []
                for tail in product(range(r), repeat=len(b) - 1):
                    pot = dict(zip(b, (0,) + tail))
                    block_opts.append([(i, j, (pot[i] - pot[j]) % r) for i, j in combinations(b, 2)])
                choices.append(block_opts)
            for combo in product(*choices):
                edges = list(flower)
                for es in combo:
                    edges.extend(es)
                out.append(RnGraph(r, n, frozenset(edges)))
    return GammaPoset(r, n, tuple(out))


# -- the lattice <-> graph correspondence


def _require_rbraid(a: Arrangement):
    if not is_rbraid(a):
        raise ValueError(f"{a!r} is not an r-braid arrangement")


def graph_of_flat(a: Arrangement, x: Flat) -> RnGraph:
    """Edges (i, j, k) for every x_i = z^k x_j containing the flat."""
    _require_rbraid(a)
    r, n = a.r, a.n
    edges = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(r):
                if i == j and k == 0:
                    continue
                if row_space_contains(x.equations, rbraid_form(r, n, i, j, k)):
                    edges.append((i, j, k))
    return RnGraph(r, n, frozenset(edges))


def flat_of_graph(lat: IntersectionLattice, g: RnGraph) -> Flat:
    """Intersection of the hyperplanes named by the edges of ``g``."""
    a = lat.arrangement
    _require_rbraid(a)
    if (g.r, g.n) != (a.r, a.n):
        raise ValueError("graph and arrangement have different (r, n)")
    if not g.edges:
        return lat[lat.bottom]
    rows = [rbraid_form(a.r, a.n, i, j, k) for i, j, k in g.sorted_edges()]
    return lat.flat_by_equations(rref(CycMatrix.from_rows(a.r, rows, a.n)))


# -- braid arrangement and set partitions of {0, ..., n}


def braid_partition_of_flat(a: Arrangement, x: Flat) -> frozenset[frozenset[int]]:
    """Blocks of coordinates forced equal on the flat; the block of 0 holds the vanishing ones."""
    if not is_braid(a):
        raise ValueError(f"{a!r} is not a braid arrangement")
    n = a.n
    parent = list(range(n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(0, n + 1):
        for j in range(i + 1, n + 1):
            if row_space_contains(x.equations, _braid_form(n, i, j)):
                parent[find(j)] = find(i)
    blocks: dict[int, set[int]] = {}
    for v in range(n + 1):
        blocks.setdefault(find(v), set()).add(v)
    return frozenset(frozenset(b) for b in blocks.values())


def _braid_form(n: int, i: int, j: int):
    zero, one = CycNum.zero(1), CycNum.one(1)
    v = [zero] * n
    if i:
        v[i - 1] = one
    v[j - 1] = v[j - 1] - one
    return tuple(v)


def partition_to_flat(lat: IntersectionLattice, partition) -> Flat:
    a = lat.arrangement
    if not is_braid(a):
        raise ValueError(f"{a!r} is not a braid arrangement")
    rows = []
    covered = set()
    for block in partition:
        b = sorted(block)
        covered.update(b)
        rows.extend(_braid_form(a.n, b[0], v) for v in b[1:])
    if covered != set(range(a.n + 1)):
        raise ValueError("not a set partition of {0, ..., n}")
    if not rows:
        return lat[lat.bottom]
    return lat.flat_by_equations(rref(CycMatrix.from_rows(1, rows, a.n)))
