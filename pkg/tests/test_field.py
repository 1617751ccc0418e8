import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bentcodes.errors import FieldError, GuardError
from bentcodes.field import (
    Field,
    discrete_log,
    format_element,
    is_irreducible,
    make_field,
    nonsquare,
    nu,
    parse_element,
    quadratic_character,
    trace,
)


def naive_polymulmod(a, b, f, p):
    """Schoolbook product mod the monic f; independent of the field module."""
    prod = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    m = len(f) - 1
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(m + 1):
                prod[d - m + i] -= c * f[i]
    return tuple(v % p for v in prod[:m])


def test_prime_field():
    F = make_field(3, 1)
    assert F.modulus == (0, 1)
    assert F.generator.coeffs == (2,)


def test_gf9_modulus_has_no_root():
    F = make_field(3, 2)
    f = F.modulus
    assert f == (1, 0, 1)
    assert all(sum(c * r**i for i, c in enumerate(f)) % 3 for r in range(3))


def test_gf9_x_squared():
    F = make_field(3, 2)
    x = F.element([0, 1])
    assert (x * x).coeffs == (2, 0)


def test_generator_order_gf625():
    F = make_field(5, 4)
    g = F.generator.coeffs
    one = (1, 0, 0, 0)
    cur = one
    order = None
    for t in range(1, 625):
        cur = naive_polymulmod(cur, g, F.modulus, 5)
        if cur == one:
            order = t
            break
    assert order == 624


def test_modulus_is_smallest_irreducible():
    for p, m in [(3, 2), (3, 3), (5, 2), (3, 4)]:
        F = make_field(p, m)
        smaller = [
            list(low) + [1]
            for low in itertools.product(range(p), repeat=m)
            if tuple(low) < F.modulus[:-1]
        ]
        assert not any(is_irreducible(f, p) for f in smaller)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (3, 4)])
def test_generator_enumerates_group(p, m):
    F = make_field(p, m)
    seen = {F.generator.power(t).code for t in range(F.q - 1)}
    assert seen == set(range(1, F.q))


def test_errors():
    with pytest.raises(FieldError):
        Field(4, 2)
    with pytest.raises(FieldError):
        Field(2, 3)
    with pytest.raises(FieldError):
        Field(3, 0)
    with pytest.raises(GuardError):
        Field(3, 16)
    F, G = make_field(3, 2), make_field(5, 2)
    with pytest.raises(FieldError):
        F.one + G.one
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_inverse_and_frobenius(gf81):
    for a in gf81:
        if a:
            assert a * a.inverse() == gf81.one
            assert a.power(-1) == a.inverse()
        assert a.power(gf81.q) == a


def test_power_nonzero_flag(gf9):
    g = gf9.generator
    assert g.power(8 * 5 + 3, nonzero=True) == g.power(3)
    assert gf9.zero.power(0) == gf9.one
    assert gf9.zero.power(8) == gf9.zero
    with pytest.raises(FieldError):
        gf9.zero.power(3, nonzero=True)


def test_trace_examples(gf9):
    assert trace(gf9.zero) == 0
    assert trace(gf9.element([0, 1])) == 0
    for m in (1, 2, 3, 4):
        F = make_field(3, m)
        for a in range(3):
            assert trace(F.prime(a)) == (m * a) % 3


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_trace_table_matches_frobenius(m):
    F = make_field(3, m)
    assert [trace(a) for a in F] == list(F.trace_table)


@pytest.mark.parametrize("p,m", [(3, 2), (3, 4), (5, 3)])
def test_trace_balanced(p, m):
    counts = np.bincount(make_field(p, m).trace_table, minlength=p)
    assert list(counts) == [p ** (m - 1)] * p


def test_trace_linear_exhaustive():
    F = make_field(3, 3)
    tr = F.trace_table
    for lam in range(3):
        for a in F:
            for b in F:
                assert tr[(F.prime(lam) * a + b).code] == (lam * tr[a.code] + tr[b.code]) % 3


def test_discrete_log_roundtrip(gf81):
    assert discrete_log(gf81.one) == 0
    assert discrete_log(gf81.generator) == 1
    for t in range(80):
        assert discrete_log(gf81.generator.power(t)) == t
    with pytest.raises(FieldError):
        discrete_log(gf81.zero)


def test_quadratic_character():
    assert quadratic_character(0, 3) == 0
    assert quadratic_character(1, 3) == 1
    assert quadratic_character(2, 3) == -1
    for p in (3, 5, 7, 11):
        squares = {x * x % p for x in range(1, p)}
        vals = [quadratic_character(a, p) for a in range(1, p)]
        assert vals.count(1) == vals.count(-1) == (p - 1) // 2
        for a in range(1, p):
            assert quadratic_character(a, p) == (1 if a in squares else -1)
            for b in range(1, p):
                assert quadratic_character(a * b, p) == quadratic_character(a, p) * quadratic_character(b, p)


def test_nu():
    for p in (3, 5, 7):
        assert nu(0, p) == p - 1
        assert nu(1, p) == -1
        assert sum(nu(z, p) for z in range(p)) == 0


@pytest.mark.parametrize("p,expected", [(3, 2), (5, 2), (7, 3), (11, 2), (17, 3)])
def test_nonsquare(p, expected):
    squares = {x * x % p for x in range(p)}
    assert nonsquare(p) == expected == min(a for a in range(p) if a not in squares)


def test_parse_element(gf81):
    assert parse_element(gf81, "g^1") == gf81.generator
    assert parse_element(gf81, "g^80") == gf81.one
    assert parse_element(gf81, "1") == gf81.one
    assert parse_element(gf81, "0,1") == gf81.element([0, 1])
    assert format_element(parse_element(gf81, "2,0,1")) == "2,0,1,0"
    with pytest.raises(FieldError):
        parse_element(gf81, "x+1")
    with pytest.raises(FieldError):
        parse_element(gf81, "3")


def test_serialisation(gf9):
    assert gf9.to_dict() == {"p": 3, "m": 2, "modulus": [1, 0, 1], "generator": [1, 1]}


codes81 = st.integers(0, 80)
codes125 = st.integers(0, 124)


@settings(max_examples=200, deadline=None)
@given(codes81, codes81, codes81)
def test_field_axioms_gf81(a, b, c):
    F = make_field(3, 4)
    a, b, c = F.element(a), F.element(b), F.element(c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == F.zero
    assert a * b == b * a


@settings(max_examples=200, deadline=None)
@given(codes125, codes125)
def test_table_mul_matches_schoolbook(a, b):
    F = make_field(5, 3)
    x, y = F.element(a), F.element(b)
    assert (x * y).coeffs == naive_polymulmod(x.coeffs, y.coeffs, F.modulus, 5)
