"""Small finite posets and order-isomorphism search."""
from __future__ import annotations

import time
from itertools import product as _product
from typing import Callable, Hashable, Sequence

__all__ = [
    "Poset",
    "PosetTooLarge",
    "IsomorphismTimeout",
    "chain",
    "boolean_lattice",
    "find_poset_isomorphism",
    "is_poset_isomorphic",
]

DEFAULT_ELEMENT_CAP = 10_000


class PosetTooLarge(ValueError):
    pass


class IsomorphismTimeout(TimeoutError):
    pass


class Poset:
    """A finite poset on elements 0..size-1 with optional labels.

    The order is stored as up-set bitmasks: bit ``j`` of ``up[i]`` is set
    iff ``i <= j``.
    """

    def __init__(self, labels: Sequence[Hashable], leq: Callable[[int, int], bool]):
        self.labels = tuple(labels)
        n = len(self.labels)
        up = []
        for i in range(n):
            bits = 0
            for j in range(n):
                if i == j or leq(i, j):
                    bits |= 1 << j
            up.append(bits)
        self.up = tuple(up)
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if up[i] >> j & 1:
                    down[j] |= 1 << i
        self.down = tuple(down)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.size):
            strict_up = self.up[i] & ~(1 << i)
            for j in range(self.size):
                if strict_up >> j & 1:
                    between = strict_up & self.down[j] & ~(1 << j)
                    if not between:
                        out.append((i, j))
        return out

    def product(self, other: "Poset") -> "Poset":
        pairs = list(_product(range(self.size), range(other.size)))
        return Poset(
            [(self.labels[a], other.labels[b]) for a, b in pairs],
            lambda i, j: self.leq(pairs[i][0], pairs[j][0]) and other.leq(pairs[i][1], pairs[j][1]),
        )

    def ranks(self) -> list[int]:
        """Length of the longest chain from a minimal element to each element."""
        order = sorted(range(self.size), key=lambda i: bin(self.down[i]).count("1"))
        rank = [0] * self.size
        for j in order:
            below = self.down[j] & ~(1 << j)
            best = -1
            i = 0
            while below:
                if below & 1:
                    best = max(best, rank[i])
                below >>= 1
                i += 1
            rank[j] = best + 1
        return rank

    def __repr__(self):
        return f"Poset(size={self.size})"


def chain(k: int) -> Poset:
    return Poset(list(range(k)), lambda i, j: i <= j)


def boolean_lattice(k: int) -> Poset:
    return Poset(list(range(1 << k)), lambda i, j: i & ~j == 0)


def _signatures(p: Poset) -> list[tuple[int, int, int]]:
    ranks = p.ranks()
    return [(ranks[i], bin(p.down[i]).count("1"), bin(p.up[i]).count("1")) for i in range(p.size)]


def find_poset_isomorphism(p: Poset, q: Poset, *, cap: int = DEFAULT_ELEMENT_CAP,
                           timeout: float | None = None) -> dict[int, int] | None:
    """Return an order isomorphism ``p -> q`` as a dict, or None.

    Backtracking over elements of ``p`` in rank order; candidates must share
    rank and up/down-set sizes.  The first witness found in index order is
    returned, so results are deterministic.
    """
    if p.size > cap or q.size > cap:
        raise PosetTooLarge(f"poset of size {max(p.size, q.size)} exceeds the cap {cap}")
    if p.size != q.size:
        return None
    sp, sq = _signatures(p), _signatures(q)
    if sorted(sp) != sorted(sq):
        return None
    if len(p.covers()) != len(q.covers()):
        return None

    candidates = {}
    for j, s in enumerate(sq):
        candidates.setdefault(s, []).append(j)
    order = sorted(range(p.size), key=lambda i: (sp[i][0], len(candidates[sp[i]]), i))
    deadline = None if timeout is None else time.monotonic() + timeout
    assign: dict[int, int] = {}
    used = [False] * q.size
    steps = 0

    def consistent(u: int, v: int) -> bool:
        for u2, v2 in assign.items():
            if p.leq(u, u2) != q.leq(v, v2) or p.leq(u2, u) != q.leq(v2, v):
                return False
        return True

    # explicit stack: cursor[d] is the next candidate position tried at depth d
    cursor = [0] * (len(order) + 1)
    depth = 0
    while depth < len(order):
        steps += 1
        if deadline is not None and steps % 1024 == 0 and time.monotonic() > deadline:
            raise IsomorphismTimeout("poset isomorphism search timed out")
        u = order[depth]
        cands = candidates[sp[u]]
        placed = False
        while cursor[depth] < len(cands):
            v = cands[cursor[depth]]
            cursor[depth] += 1
            if not used[v] and consistent(u, v):
                assign[u] = v
                used[v] = True
                placed = True
                break
        if placed:
            depth += 1
            cursor[depth] = 0
            continue
        if depth == 0:
            return None
        depth -= 1
        prev = order[depth]
        used[assign.pop(prev)] = False
    return dict(sorted(assign.items()))


def is_poset_isomorphic(p: Poset, q: Poset, **kwargs) -> bool:
    return find_poset_isomorphism(p, q, **kwargs) is not None
