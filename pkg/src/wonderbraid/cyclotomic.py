"""Exact arithmetic in the cyclotomic field Q(z), z a primitive r-th root of unity.

Elements are stored in the power basis 1, z, ..., z^(phi(r)-1) reduced modulo
the r-th cyclotomic polynomial, so equality is plain coefficient equality.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "CycNum",
    "OrderMismatch",
    "cyclotomic_polynomial",
    "euler_phi",
    "zeta_pow",
    "parse_cycnum",
    "format_rational",
]


class OrderMismatch(ValueError):
    """Raised when two cyclotomic numbers of different orders are combined."""


# -- integer/rational polynomial helpers (coefficient lists, lowest degree first)

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    """Long division of a by b; b must have an invertible leading coefficient."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1]
        if c == 0:
            continue
        if lead != 1:
            c = Fraction(c) / lead
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
    return _trim(quot), _trim(rem)


def euler_phi(r: int) -> int:
    if r < 1:
        raise ValueError("r must be positive")
    result, m, p = r, r, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _cyclotomic(r: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (r - 1) + [1]  # x^r - 1
    for d in range(1, r):
        if r % d == 0:
            poly, rem = _poly_divmod(poly, list(_cyclotomic(d)))
            assert not rem
    return tuple(int(c) for c in poly)


def cyclotomic_polynomial(r: int) -> tuple[int, ...]:
    """Coefficients of the r-th cyclotomic polynomial, constant term first.

    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"cyclotomic polynomial needs r >= 1, got {r!r}")
    return _cyclotomic(r)


def _reduce(coeffs, r):
    """Reduce a coefficient list modulo Phi_r into a tuple of length phi(r)."""
    phi = cyclotomic_polynomial(r)
    deg = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    # phi is monic, so subtracting multiples of it needs no division
    for top in range(len(c) - 1, deg - 1, -1):
        t = c[top]
        if t:
            base = top - deg
            for i, y in enumerate(phi):
                if y:
                    c[base + i] -= t * y
    c = c[:deg] + [Fraction(0)] * (deg - len(c))
    return tuple(c)


class CycNum:
    """An element of Q(z_r), immutable and hashable."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs=(), *, _reduced: bool = False):
        if not isinstance(order, int) or order < 1:
            raise ValueError(f"order must be a positive integer, got {order!r}")
        object.__setattr__(self, "order", order)
        if _reduced:
            object.__setattr__(self, "coeffs", tuple(coeffs))
        else:
            object.__setattr__(self, "coeffs", _reduce(coeffs, order))
        object.__setattr__(self, "_hash", hash((order, self.coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # -- construction helpers
    @classmethod
    def from_rational(cls, order: int, value) -> "CycNum":
        return cls(order, [Fraction(value)])

    @classmethod
    def zero(cls, order: int) -> "CycNum":
        return cls(order, ())

    @classmethod
    def one(cls, order: int) -> "CycNum":
        return cls(order, (1,))

    # -- predicates
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic
    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise OrderMismatch(f"cannot combine orders {self.order} and {other.order}")
            return other
        if isinstance(other, (int, Rational)):
            return CycNum(self.order, [Fraction(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, tuple(-a for a in self.coeffs), _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycNum(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), _reduced=True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.coeffs) == 1:
            a = self.coeffs[0]
            return CycNum(self.order, tuple(a * b for b in other.coeffs), _reduced=True)
        return CycNum(self.order, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_r."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(z)")
        if len(self.coeffs) == 1:
            return CycNum(self.order, (1 / self.coeffs[0],), _reduced=True)
        # invariant: s_i * a == r_i (mod phi)
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(self.order)], _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant since phi is irreducible
        c = r1[0]
        return CycNum(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result, base = CycNum.one(self.order), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CycNum({self.order}, {format_cycnum(self)!r})"

    def __str__(self):
        return format_cycnum(self)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def zeta_pow(r: int, k: int) -> CycNum:
    """Canonical representative of z^(k mod r) in Q(z_r)."""
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    return _zeta_pow(r, k % r)


@lru_cache(maxsize=None)
def _zeta_pow(r, k):
    return CycNum(r, [0] * k + [1])


# -- text form


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cycnum(a: CycNum) -> str:
    """Render as ``c0 + c1*z + c2*z^2``; zero coefficients are dropped."""
    parts = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = format_rational(mag)
        else:
            mono = "z" if i == 1 else f"z^{i}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


_NUM_RE = re.compile(r"\d+")


def parse_cycnum(text: str, r: int) -> CycNum:
    """Parse the textual form produced by :func:`format_cycnum` (plus ``z^k``, parentheses, ``*``)."""
    from wonderbraid.arrangement import parse_linear_form

    value = parse_linear_form(text, r, allow_constant=True)
    if set(value) - {0}:
        raise ValueError(f"not a constant: {text!r}")
    return value.get(0, CycNum.zero(r))
