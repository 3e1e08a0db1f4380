"""Row-echelon linear algebra over Q(z_r).

Flats are named by the row space of their defining linear forms, kept in
reduced row echelon form so that equal spaces have identical representations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from wonderbraid.cyclotomic import CycNum

__all__ = [
    "CycMatrix",
    "CanonicalRowSpace",
    "DimensionMismatch",
    "rref",
    "row_space_contains",
    "stack_and_reduce",
    "reduce_vector",
    "nullspace",
]


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CycMatrix:
    order: int
    rows: int
    cols: int
    entries: tuple[CycNum, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for e in self.entries:
            if e.order != self.order:
                raise ValueError(f"entry of order {e.order} in a matrix over Q(z_{self.order})")

    @classmethod
    def from_rows(cls, order: int, rows: Sequence[Sequence], cols: int | None = None) -> "CycMatrix":
        rows = [list(row) for row in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for an empty matrix")
            cols = len(rows[0])
        entries = []
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatch("ragged rows")
            entries.extend(x if isinstance(x, CycNum) else CycNum(order, [x]) for x in row)
        return cls(order, len(rows), cols, tuple(entries))

    def row(self, i: int) -> tuple[CycNum, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_list(self) -> list[tuple[CycNum, ...]]:
        return [self.row(i) for i in range(self.rows)]


@dataclass(frozen=True)
class CanonicalRowSpace:
    """Reduced row echelon form with zero rows dropped.

    Two row spaces are equal exactly when these values compare equal, so the
    object doubles as a hash key for a flat.
    """

    order: int
    cols: int
    basis: tuple[tuple[CycNum, ...], ...]
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def rref(self) -> CycMatrix:
        return CycMatrix(self.order, self.rank, self.cols, tuple(x for row in self.basis for x in row))

    @classmethod
    def empty(cls, order: int, cols: int) -> "CanonicalRowSpace":
        return cls(order, cols, (), ())


def _echelon(order: int, cols: int, rows: list[list[CycNum]]) -> CanonicalRowSpace:
    # leftmost nonzero column, first nonzero row below the current pivot row
    rows = [list(r) for r in rows]
    pivots = []
    pr = 0
    for c in range(cols):
        if pr == len(rows):
            break
        sel = next((i for i in range(pr, len(rows)) if not rows[i][c].is_zero()), None)
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        piv = rows[pr][c]
        if not piv.is_one():
            inv = piv.inv()
            rows[pr] = [x * inv for x in rows[pr]]
        prow = rows[pr]
        for i in range(len(rows)):
            if i == pr:
                continue
            f = rows[i][c]
            if f.is_zero():
                continue
            rows[i] = [x - f * y if not y.is_zero() else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        pr += 1
    basis = tuple(tuple(r) for r in rows[:pr])
    return CanonicalRowSpace(order, cols, basis, tuple(pivots))


def rref(m: CycMatrix) -> CanonicalRowSpace:
    return _echelon(m.order, m.cols, m.row_list())


def reduce_vector(a: CanonicalRowSpace, v: Sequence[CycNum]) -> list[CycNum]:
    """Remainder of ``v`` after clearing every pivot column of ``a``."""
    if len(v) != a.cols:
        raise DimensionMismatch(f"vector of length {len(v)} against {a.cols} columns")
    v = list(v)
    for row, c in zip(a.basis, a.pivots):
        f = v[c]
        if f.is_zero():
            continue
        v = [x - f * y if not y.is_zero() else x for x, y in zip(v, row)]
    return v


def _check_compatible(a: CanonicalRowSpace, order: int, cols: int):
    if a.order != order:
        raise ValueError(f"order mismatch: {a.order} vs {order}")
    if a.cols != cols:
        raise DimensionMismatch(f"column mismatch: {a.cols} vs {cols}")


def row_space_contains(a: CanonicalRowSpace, b) -> bool:
    """True iff every row of ``b`` lies in the row space of ``a``.

    ``b`` may be a CanonicalRowSpace, a CycMatrix or a single row.
    """
    if isinstance(b, CanonicalRowSpace):
        _check_compatible(a, b.order, b.cols)
        rows = b.basis
    elif isinstance(b, CycMatrix):
        _check_compatible(a, b.order, b.cols)
        rows = b.row_list()
    else:
        rows = [tuple(b)]
    return all(not any(reduce_vector(a, row)) for row in rows)


def stack_and_reduce(a: CanonicalRowSpace, rows) -> CanonicalRowSpace:
    if isinstance(rows, CycMatrix):
        _check_compatible(a, rows.order, rows.cols)
        extra = rows.row_list()
    elif isinstance(rows, CanonicalRowSpace):
        _check_compatible(a, rows.order, rows.cols)
        extra = list(rows.basis)
    else:
        extra = [tuple(r) for r in rows]
        for r in extra:
            if len(r) != a.cols:
                raise DimensionMismatch(f"row of length {len(r)} against {a.cols} columns")
    return _echelon(a.order, a.cols, list(a.basis) + [list(r) for r in extra])


def nullspace(m: CycMatrix) -> list[tuple[CycNum, ...]]:
    """Basis of {c : m c = 0}, one vector per free column of the echelon form."""
    e = rref(m)
    zero = CycNum.zero(m.order)
    one = CycNum.one(m.order)
    free = [c for c in range(m.cols) if c not in e.pivots]
    out = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for row, p in zip(e.basis, e.pivots):
            v[p] = -row[f]
        out.append(tuple(v))
    return out
