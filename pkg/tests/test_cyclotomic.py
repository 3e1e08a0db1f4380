from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wonderbraid.cyclotomic import (
    CycNum,
    OrderMismatch,
    cyclotomic_polynomial,
    euler_phi,
    format_cycnum,
    parse_cycnum,
    zeta_pow,
)

X = sympy.Symbol("x")


@pytest.mark.parametrize("r", range(1, 31))
def test_phi_matches_sympy(r):
    expected = sympy.Poly(sympy.cyclotomic_poly(r, X), X).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(r)) == [int(c) for c in expected]
    assert len(cyclotomic_polynomial(r)) - 1 == euler_phi(r) == sympy.totient(r)


def test_phi_small_values():
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


def test_phi_rejects_nonpositive():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


@pytest.mark.parametrize("r", range(1, 13))
def test_zeta_is_primitive(r):
    z = zeta_pow(r, 1)
    powers = [z**k for k in range(r)]
    assert (z**r).is_one()
    assert all(not p.is_one() for p in powers[1:])
    assert len(set(powers)) == r


def test_zeta_pow_values():
    assert zeta_pow(2, 1) == CycNum.from_rational(2, -1)
    assert zeta_pow(3, 2) == -CycNum.one(3) - zeta_pow(3, 1)
    assert zeta_pow(4, 2) == CycNum.from_rational(4, -1)
    assert zeta_pow(5, -1) == zeta_pow(5, 4)
    assert zeta_pow(6, 13) == zeta_pow(6, 1)


def test_numeric_embedding_agrees():
    import cmath

    for r in (3, 5, 7, 8):
        w = cmath.exp(2j * cmath.pi / r)
        a = CycNum(r, (1, 2, Fraction(-1, 3)))
        b = CycNum(r, (0, -1, 0, 4))

        def ev(c):
            return sum(complex(float(x)) * w**i for i, x in enumerate(c.coeffs))

        assert abs(ev(a * b) - ev(a) * ev(b)) < 1e-9
        assert abs(ev(a / b) - ev(a) / ev(b)) < 1e-9


def cycnums(r):
    deg = euler_phi(r)
    fr = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(fr, min_size=deg, max_size=deg).map(lambda cs: CycNum(r, tuple(cs)))


@st.composite
def triple(draw):
    r = draw(st.integers(2, 6))
    return r, draw(cycnums(r)), draw(cycnums(r)), draw(cycnums(r))


@settings(max_examples=150, deadline=None)
@given(triple())
def test_field_axioms(t):
    r, a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CycNum.zero(r)
    if not a.is_zero():
        assert (a * a.inv()).is_one()
        assert (b / a) * a == b


@settings(max_examples=100, deadline=None)
@given(triple())
def test_format_parse_roundtrip(t):
    r, a, _, _ = t
    assert parse_cycnum(format_cycnum(a), r) == a


def test_hash_consistent_with_eq():
    a = CycNum(3, (1, 1))
    b = -zeta_pow(3, 2)
    assert a == b and hash(a) == hash(b)


def test_errors():
    with pytest.raises(ZeroDivisionError):
        CycNum.zero(5).inv()
    with pytest.raises(OrderMismatch):
        CycNum.one(3) + CycNum.one(4)


def test_format_examples():
    assert format_cycnum(CycNum(5, (1, 0, -2))) == "1 - 2*z^2"
    assert format_cycnum(CycNum.zero(3)) == "0"
    assert parse_cycnum("z^-1", 4) == zeta_pow(4, 3)
