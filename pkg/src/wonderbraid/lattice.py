"""Intersection lattices of central arrangements.

A flat is identified by its closed set of hyperplanes (``hset``) and by the
canonical row space of its equations.  Flats get dense ids sorted by rank,
then by the lexicographic order of their hyperplane sets, so id 0 is the
ambient space and ids increase along every chain.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from wonderbraid import kernels
from wonderbraid.arrangement import Arrangement, format_form
from wonderbraid.linalg import CanonicalRowSpace, rref, row_space_contains, stack_and_reduce, CycMatrix
from wonderbraid.poset import Poset

__all__ = [
    "Flat",
    "IntersectionLattice",
    "LatticeCapExceeded",
    "DEFAULT_FLAT_CAP",
    "intersection_lattice",
    "closure",
    "brute_force_hsets",
    "interval",
    "mobius",
    "characteristic_polynomial",
    "evaluate_polynomial",
    "format_polynomial",
    "complement_count_mod_q",
    "good_primes",
    "root_of_unity_mod",
    "finite_field_check",
]

DEFAULT_FLAT_CAP = 10**6
ENUMERATION_CAP = 10**8
SCHEMA = "wonderbraid/1"


class LatticeCapExceeded(RuntimeError):
    """The flat count passed the configured cap."""


def flat_cap_from_env(default: int = DEFAULT_FLAT_CAP) -> int:
    raw = os.environ.get("WONDERBRAID_CAP_FLATS")
    if not raw:
        return default
    cap = int(raw)
    if cap < 1:
        raise ValueError("WONDERBRAID_CAP_FLATS must be positive")
    return cap


@dataclass(frozen=True)
class Flat:
    id: int
    hset: tuple[int, ...]
    equations: CanonicalRowSpace = field(repr=False)
    lin_dim: int
    proj_empty: bool
    mask: int = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.equations.rank

    @property
    def proj_dim(self) -> int:
        return self.lin_dim - 1


def _hset_mask(forms, eq: CanonicalRowSpace) -> int:
    mask = 0
    for h, f in enumerate(forms):
        if row_space_contains(eq, f):
            mask |= 1 << h
    return mask


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    h = 0
    while mask:
        if mask & 1:
            out.append(h)
        mask >>= 1
        h += 1
    return tuple(out)


def closure(a: Arrangement, hset) -> tuple[int, ...]:
    """All hyperplanes containing the intersection of those in ``hset``."""
    hset = sorted(set(hset))
    for h in hset:
        if not 0 <= h < len(a):
            raise IndexError(f"hyperplane index {h} out of range")
    if not hset:
        return ()
    eq = rref(CycMatrix.from_rows(a.r, [a[h].coeffs for h in hset], a.n))
    return _bits(_hset_mask([h.coeffs for h in a], eq))


def brute_force_hsets(a: Arrangement) -> set[tuple[int, ...]]:
    """Closed hyperplane sets of every subset of ``a``; exponential, for testing."""
    forms = [h.coeffs for h in a]
    seen = {}
    out = set()
    for k in range(len(a) + 1):
        for sub in combinations(range(len(a)), k):
            if sub:
                eq = rref(CycMatrix.from_rows(a.r, [forms[h] for h in sub], a.n))
            else:
                eq = CanonicalRowSpace.empty(a.r, a.n)
            if eq not in seen:
                seen[eq] = _bits(_hset_mask(forms, eq))
            out.add(seen[eq])
    return out


class IntersectionLattice:
    def __init__(self, arrangement: Arrangement, flats: list[Flat]):
        self.arrangement = arrangement
        self.flats = tuple(flats)
        self.bottom = 0
        self._by_eq = {f.equations: f.id for f in self.flats}
        self._by_mask = {f.mask: f.id for f in self.flats}
        self.masks = tuple(f.mask for f in self.flats)
        full = 0
        for m in self.masks:
            full |= m
        self.top = self._by_mask[full]

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def __getitem__(self, i: int) -> Flat:
        return self.flats[i]

    def __repr__(self):
        return f"IntersectionLattice({self.arrangement!r}, {len(self)} flats)"

    @property
    def n(self) -> int:
        return self.arrangement.n

    def rank(self, x: int) -> int:
        return self.flats[x].rank

    def leq(self, a: int, b: int) -> bool:
        """a <= b in reverse inclusion, i.e. hset(a) is a subset of hset(b)."""
        return self.masks[a] & ~self.masks[b] == 0

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def flat_by_equations(self, eq: CanonicalRowSpace) -> Flat:
        return self.flats[self._by_eq[eq]]

    def flat_by_hset(self, hset) -> Flat:
        mask = 0
        for h in hset:
            mask |= 1 << h
        return self.flats[self._by_mask[mask]]

    def id_of_mask(self, mask: int) -> int:
        return self._by_mask[mask]

    @cached_property
    def join_table(self):
        return kernels.join_table(self.masks)

    @cached_property
    def masks_wide(self) -> bool:
        return any(m >= 1 << 64 for m in self.masks)

    def join(self, a: int, b: int) -> int:
        return self.join_table[a * len(self.flats) + b]

    def join_all(self, ids) -> int:
        acc = self.bottom
        nf = len(self.flats)
        t = self.join_table
        for y in ids:
            acc = t[acc * nf + y]
        return acc

    @cached_property
    def down_sets(self) -> tuple[tuple[int, ...], ...]:
        nf = len(self.flats)
        masks = self.masks
        out = []
        for x in range(nf):
            mx = masks[x]
            out.append(tuple(y for y in range(x + 1) if masks[y] & ~mx == 0))
        return tuple(out)

    def down(self, x: int) -> tuple[int, ...]:
        return self.down_sets[x]

    @cached_property
    def hasse(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs (a, b): a < b with rank(b) = rank(a) + 1."""
        pairs = []
        for b in range(len(self.flats)):
            rb = self.flats[b].rank
            for a in self.down_sets[b]:
                if self.flats[a].rank == rb - 1:
                    pairs.append((a, b))
        pairs.sort()
        return tuple(pairs)

    def atoms(self) -> list[int]:
        return [f.id for f in self.flats if f.rank == 1]

    def counts_by_dimension(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.flats:
            out[f.lin_dim] = out.get(f.lin_dim, 0) + 1
        return dict(sorted(out.items()))

    # -- serialization

    def flat_json(self, f: Flat) -> dict:
        return {
            "id": f.id,
            "hset": list(f.hset),
            "equations": [format_form(row) for row in f.equations.basis],
            "lin_dim": f.lin_dim,
            "proj_empty": f.proj_empty,
        }

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "arrangement": self.arrangement.to_json(),
            "flats": [self.flat_json(f) for f in self.flats],
            "hasse": [list(p) for p in self.hasse],
        }

    def flat_label(self, f: Flat) -> str:
        if f.id == self.bottom:
            return "ambient"
        return "; ".join(format_form(row) for row in f.equations.basis)

    def to_dot(self) -> str:
        lines = ["digraph lattice {", "  rankdir=BT;", "  edge [arrowhead=none];", "  node [shape=box, fontsize=10];"]
        for f in self.flats:
            label = self.flat_label(f).replace('"', '\\"')
            style = ", style=dashed" if f.proj_empty else ""
            lines.append(f'  f{f.id} [label="{f.id}: {label}"{style}];')
        for a, b in self.hasse:
            lines.append(f"  f{a} -> f{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def intersection_lattice(a: Arrangement, cap: int | None = None, threads: int = 1) -> IntersectionLattice:
    """All flats of ``a``, found breadth-first by adding one hyperplane at a time."""
    if cap is None:
        cap = flat_cap_from_env()
    if cap < 1:
        raise ValueError("flat cap must be positive")
    forms = [h.coeffs for h in a]
    k = len(forms)

    def expand(item):
        eq, mask = item
        out = []
        covered = mask
        for h in range(k):
            if covered >> h & 1:
                continue
            new = stack_and_reduce(eq, [forms[h]])
            new_mask = _hset_mask(forms, new)
            covered |= new_mask
            out.append((new, new_mask))
        return out

    bottom = CanonicalRowSpace.empty(a.r, a.n)
    found = {bottom: 0}
    level = [(bottom, 0)]
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while level:
            results = pool.map(expand, level) if pool else map(expand, level)
            nxt = []
            for res in results:
                for new, new_mask in res:
                    if new in found:
                        continue
                    found[new] = new_mask
                    if len(found) > cap:
                        raise LatticeCapExceeded(f"more than {cap} flats; raise the flat cap to continue")
                    nxt.append((new, new_mask))
            level = nxt
    finally:
        if pool:
            pool.shutdown()

    entries = sorted(found.items(), key=lambda kv: (kv[0].rank, _bits(kv[1])))
    flats = []
    for i, (eq, mask) in enumerate(entries):
        lin_dim = a.n - eq.rank
        flats.append(Flat(i, _bits(mask), eq, lin_dim, lin_dim == 0, mask))
    return IntersectionLattice(a, flats)


def interval(lat: IntersectionLattice, a: int, b: int) -> Poset:
    """The sub-poset [a, b]; element labels are the original flat ids."""
    if not lat.leq(a, b):
        raise ValueError(f"flat {a} is not below flat {b}")
    ids = [c for c in lat.down(b) if lat.leq(a, c)]
    return Poset(ids, lambda i, j: lat.leq(ids[i], ids[j]))


def mobius(lat: IntersectionLattice) -> list[int]:
    """mu(0, x) for every flat x, indexed by id."""
    mu = [0] * len(lat)
    mu[lat.bottom] = 1
    for x in range(len(lat)):
        if x == lat.bottom:
            continue
        mu[x] = -sum(mu[y] for y in lat.down(x) if y != x)
    return mu


def characteristic_polynomial(lat: IntersectionLattice) -> list[int]:
    """Coefficients of sum_x mu(0, x) t^dim(x), constant term first."""
    coeffs = [0] * (lat.n + 1)
    for f, m in zip(lat.flats, mobius(lat)):
        coeffs[f.lin_dim] += m
    return coeffs


def evaluate_polynomial(coeffs, t: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def format_polynomial(coeffs, var: str = "t") -> str:
    parts = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


# -- finite-field point counts


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def _prime_factors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def root_of_unity_mod(r: int, q: int) -> int:
    """g^((q-1)/r) for the smallest generator g of F_q^*: an element of order exactly r."""
    if not _is_prime(q):
        raise ValueError(f"{q} is not prime")
    if (q - 1) % r:
        raise ValueError(f"F_{q} has no element of order {r} (need q = 1 mod r)")
    if q == 2:
        return 1
    fac = _prime_factors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in fac):
            return pow(g, (q - 1) // r, q)
    raise AssertionError("unreachable: F_q^* is cyclic")


def _reduce_mod(c, z: int, q: int) -> int:
    acc = 0
    zp = 1
    for coef in c.coeffs:
        coef = Fraction(coef)
        if coef.denominator % q == 0:
            raise ValueError(f"prime {q} divides a coefficient denominator")
        acc = (acc + coef.numerator * pow(coef.denominator, -1, q) * zp) % q
        zp = zp * z % q
    return acc


def complement_count_mod_q(a: Arrangement, q: int, cap: int = ENUMERATION_CAP) -> int:
    """Points of F_q^n on no hyperplane of ``a``, with z sent to an element of order r."""
    z = root_of_unity_mod(a.r, q)
    if q ** a.n > cap:
        raise ValueError(f"q^n = {q}^{a.n} exceeds the enumeration cap {cap}")
    forms = [[_reduce_mod(c, z, q) for c in h.coeffs] for h in a]
    return kernels.count_complement(forms, a.n, q)


def good_primes(r: int, floor: int = 5, count: int = 2) -> list[int]:
    """The ``count`` smallest primes q >= floor with q = 1 mod r."""
    out = []
    q = max(floor, 2)
    while len(out) < count:
        if _is_prime(q) and (q - 1) % r == 0:
            out.append(q)
        q += 1
    return out


def finite_field_check(lat: IntersectionLattice, primes) -> list[dict]:
    """Compare chi(q) with the point count for each prime; mismatches are flagged, not dropped."""
    chi = characteristic_polynomial(lat)
    rows = []
    for q in primes:
        value = evaluate_polynomial(chi, q)
        count = complement_count_mod_q(lat.arrangement, q)
        rows.append({"q": q, "chi": value, "count": count, "equal": value == count})
    return rows
