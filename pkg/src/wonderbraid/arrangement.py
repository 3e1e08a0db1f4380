"""Central hyperplane arrangements with coefficients in Q(z_r)."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from wonderbraid.cyclotomic import CycNum, format_cycnum, zeta_pow

__all__ = [
    "Hyperplane",
    "Arrangement",
    "ArrangementParseError",
    "braid_arrangement",
    "r_braid_arrangement",
    "rbraid_form",
    "parse_arrangement",
    "load_arrangement",
    "parse_linear_form",
    "format_form",
    "is_braid",
    "is_rbraid",
]

log = logging.getLogger(__name__)


class ArrangementParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


def normalize_form(coeffs: Sequence[CycNum]) -> tuple[CycNum, ...]:
    """Scale a linear form so its first nonzero coefficient is 1."""
    lead = next((c for c in coeffs if not c.is_zero()), None)
    if lead is None:
        raise ValueError("the zero form does not define a hyperplane")
    if lead.is_one():
        return tuple(coeffs)
    inv = lead.inv()
    return tuple(c * inv for c in coeffs)


@dataclass(frozen=True)
class Hyperplane:
    coeffs: tuple[CycNum, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", normalize_form(self.coeffs))
        if not self.label:
            object.__setattr__(self, "label", format_form(self.coeffs))

    @property
    def order(self) -> int:
        return self.coeffs[0].order

    def __str__(self):
        return self.label


class Arrangement:
    """Duplicate-free ordered list of hyperplanes in C^n over Q(z_r).

    Equality ignores hyperplane order and labels.
    """

    def __init__(self, r: int, n: int, hyperplanes: Iterable[Hyperplane]):
        if r < 1 or n < 1:
            raise ValueError(f"need r >= 1 and n >= 1, got r={r}, n={n}")
        hs = tuple(hyperplanes)
        seen = set()
        for h in hs:
            if len(h.coeffs) != n:
                raise ValueError(f"hyperplane {h} has {len(h.coeffs)} coefficients, expected {n}")
            if h.order != r:
                raise ValueError(f"hyperplane {h} has coefficients of order {h.order}, expected {r}")
            if h.coeffs in seen:
                raise ValueError(f"duplicate hyperplane {h}")
            seen.add(h.coeffs)
        self.r = r
        self.n = n
        self.hyperplanes = hs
        self._key = (r, n, frozenset(seen))

    def __len__(self):
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i):
        return self.hyperplanes[i]

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Arrangement(r={self.r}, n={self.n}, {len(self)} hyperplanes)"

    @property
    def projective_dim(self) -> int:
        return self.n - 1

    def index(self, coeffs: Sequence[CycNum]) -> int:
        target = normalize_form(coeffs)
        for i, h in enumerate(self.hyperplanes):
            if h.coeffs == target:
                return i
        raise KeyError(format_form(target))

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "hyperplanes": [format_form(h.coeffs) for h in self.hyperplanes]}


def _coord_form(r: int, n: int, i: int) -> tuple[CycNum, ...]:
    zero, one = CycNum.zero(r), CycNum.one(r)
    return tuple(one if m == i else zero for m in range(1, n + 1))


def rbraid_form(r: int, n: int, i: int, j: int, k: int) -> tuple[CycNum, ...]:
    """Un-normalized form of ``x_i = z^k x_j`` (1-based indices, i <= j)."""
    zero = CycNum.zero(r)
    v = [zero] * n
    v[i - 1] = v[i - 1] + CycNum.one(r)
    v[j - 1] = v[j - 1] - zeta_pow(r, k)
    return tuple(v)


def braid_arrangement(n: int) -> Arrangement:
    """Hyperplanes x_i = x_j for 0 <= i < j <= n, with x_0 = 0."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"braid arrangement needs n >= 1, got {n!r}")
    hs = []
    for i in range(0, n + 1):
        for j in range(i + 1, n + 1):
            if i == 0:
                hs.append(Hyperplane(_coord_form(1, n, j), f"x{j}"))
            else:
                hs.append(Hyperplane(rbraid_form(1, n, i, j, 0), f"x{i} - x{j}"))
    return Arrangement(1, n, hs)


def r_braid_arrangement(r: int, n: int) -> Arrangement:
    """Coordinate hyperplanes followed by x_i - z^k x_j for i < j, k in Z_r."""
    if not isinstance(r, int) or r < 2:
        raise ValueError(f"r-braid arrangement needs r >= 2, got {r!r} (use braid_arrangement for r = 1)")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"r-braid arrangement needs n >= 1, got {n!r}")
    hs = [Hyperplane(_coord_form(r, n, i), f"x{i}") for i in range(1, n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(r):
                label = f"x{i} - x{j}" if k == 0 else f"x{i} - z^{k}*x{j}"
                hs.append(Hyperplane(rbraid_form(r, n, i, j, k), label))
    return Arrangement(r, n, hs)


def is_braid(a: Arrangement) -> bool:
    return a.r == 1 and a == braid_arrangement(a.n)


def is_rbraid(a: Arrangement) -> bool:
    return a.r >= 2 and a == r_braid_arrangement(a.r, a.n)


# -- text forms


def _format_coeff(c: CycNum) -> tuple[str, str]:
    """(sign, body) for a coefficient in front of a variable; body '' means 1."""
    nz = [i for i, x in enumerate(c.coeffs) if x != 0]
    if len(nz) == 1:
        lead = c.coeffs[nz[0]]
        sign = "-" if lead < 0 else "+"
        body = format_cycnum(-c if lead < 0 else c)
        return sign, "" if body == "1" else body
    return "+", f"({format_cycnum(c)})"


def format_form(coeffs: Sequence[CycNum]) -> str:
    parts = []
    for i, c in enumerate(coeffs, start=1):
        if c.is_zero():
            continue
        sign, body = _format_coeff(c)
        term = f"{body}*x{i}" if body else f"x{i}"
        if not parts:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts) if parts else "0"


class _FormParser:
    """Recursive-descent parser for sums of (coef)*x<i> terms.

    Values are dicts {var index: CycNum}; index 0 holds the constant term.
    """

    def __init__(self, text: str, r: int):
        self.text = text
        self.r = r
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        col = (self.pos if pos is None else pos) + 1
        raise ArrangementParseError(f"{msg} in {self.text!r}", None, col)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def number(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self) -> dict[int, CycNum]:
        if not self.text.strip():
            self.error("empty form")
        v = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return v

    def expr(self):
        ch = self.peek()
        if ch in "+-":
            self.pos += 1
            v = self.term()
            if ch == "-":
                v = _scale(v, CycNum.from_rational(self.r, -1))
        else:
            v = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            if op == "-":
                rhs = _scale(rhs, CycNum.from_rational(self.r, -1))
            v = _add(v, rhs)
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/") and self.peek():
            op = self.peek()
            at = self.pos
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                if _is_const(v):
                    v = _scale(rhs, v.get(0, CycNum.zero(self.r)))
                elif _is_const(rhs):
                    v = _scale(v, rhs.get(0, CycNum.zero(self.r)))
                else:
                    self.error("product of two variables is not linear", at)
            else:
                if not _is_const(rhs):
                    self.error("division by a variable", at)
                d = rhs.get(0, CycNum.zero(self.r))
                if d.is_zero():
                    self.error("division by zero", at)
                v = _scale(v, d.inv())
        return v

    def unary(self):
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return _scale(self.unary(), CycNum.from_rational(self.r, -1))
        if ch == "+":
            self.pos += 1
            return self.unary()
        return self.atom()

    def atom(self):
        ch = self.peek()
        if ch == "":
            self.error("unexpected end of input")
        if ch.isdigit():
            return {0: CycNum.from_rational(self.r, Fraction(self.number()))}
        if ch == "z":
            self.pos += 1
            k = 1
            if self.peek() == "^":
                self.pos += 1
                neg = False
                if self.peek() == "-":
                    neg = True
                    self.pos += 1
                k = -self.number() if neg else self.number()
            return {0: zeta_pow(self.r, k)}
        if ch == "x":
            self.pos += 1
            at = self.pos
            i = self.number()
            if i < 1:
                self.error(f"variable index x{i} out of range", at)
            return {i: CycNum.one(self.r)}
        if ch == "(":
            self.pos += 1
            v = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return v
        self.error(f"unexpected {ch!r}")


def _is_const(v):
    return all(k == 0 for k in v)


def _scale(v, c):
    return {k: x * c for k, x in v.items()}


def _add(a, b):
    out = dict(a)
    for k, x in b.items():
        out[k] = out[k] + x if k in out else x
    return out


def parse_linear_form(text: str, r: int, allow_constant: bool = False) -> dict[int, CycNum]:
    v = _FormParser(text, r).parse()
    v = {k: x for k, x in v.items() if not x.is_zero()}
    if not allow_constant and 0 in v:
        raise ArrangementParseError(f"affine term in {text!r}; only central arrangements are supported")
    return v


def parse_arrangement(text: str, on_duplicate: str = "warn") -> Arrangement:
    """Parse ``{"r": int, "n": int, "hyperplanes": [form, ...]}``.

    ``on_duplicate`` is one of ``"warn"``, ``"error"`` or ``"ignore"``;
    duplicates are dropped unless it is ``"error"``.
    """
    if on_duplicate not in ("warn", "error", "ignore"):
        raise ValueError(f"bad on_duplicate {on_duplicate!r}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArrangementParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ArrangementParseError("arrangement file must hold a JSON object")
    for key in ("r", "n", "hyperplanes"):
        if key not in doc:
            raise ArrangementParseError(f"missing key {key!r}")
    r, n, forms = doc["r"], doc["n"], doc["hyperplanes"]
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ArrangementParseError(f"'r' must be a positive integer, got {r!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ArrangementParseError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(forms, list) or not all(isinstance(f, str) for f in forms):
        raise ArrangementParseError("'hyperplanes' must be a list of strings")

    lines = text.splitlines()
    hs, seen = [], set()
    for idx, form in enumerate(forms):
        line = _locate(lines, form)
        try:
            v = parse_linear_form(form, r)
        except ArrangementParseError as exc:
            raise ArrangementParseError(f"hyperplane #{idx + 1}: {exc.args[0]}", line, exc.column) from None
        if any(k > n for k in v):
            raise ArrangementParseError(f"hyperplane #{idx + 1}: variable beyond x{n} in {form!r}", line)
        coeffs = tuple(v.get(i, CycNum.zero(r)) for i in range(1, n + 1))
        if all(c.is_zero() for c in coeffs):
            raise ArrangementParseError(f"hyperplane #{idx + 1}: zero form {form!r}", line)
        h = Hyperplane(coeffs)
        if h.coeffs in seen:
            if on_duplicate == "error":
                raise ArrangementParseError(f"hyperplane #{idx + 1}: duplicate of an earlier hyperplane ({form!r})", line)
            if on_duplicate == "warn":
                log.warning("dropping duplicate hyperplane #%d: %s", idx + 1, form)
            continue
        seen.add(h.coeffs)
        hs.append(h)
    return Arrangement(r, n, hs)


def _locate(lines: list[str], form: str) -> int | None:
    needle = json.dumps(form)
    for i, line in enumerate(lines, start=1):
        if needle in line:
            return i
    return None


def load_arrangement(path, on_duplicate: str = "warn") -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read(), on_duplicate=on_duplicate)
