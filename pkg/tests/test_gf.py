import itertools
import random

import pytest

from polarank.errors import CompositeP, DivisionByZero, FieldMismatch
from polarank.gf import binom_mod_p, build_field, enumerate_field, field_arithmetic


def brute_force_modulus(p, t):
    """Independent oracle: scan monic degree-t polynomials in code order and
    return the first with no nontrivial monic factor."""

    def poly_mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    def monics(deg):
        for tail in itertools.product(range(p), repeat=deg):
            yield list(tail) + [1]

    def divides(d, f):
        # trial products d * g for all monic g of the complementary degree
        gdeg = len(f) - len(d)
        for g in monics(gdeg):
            if poly_mul(d, g) == list(f):
                return True
        return False

    for code in range(p**t):
        tail = []
        c = code
        for _ in range(t):
            tail.append(c % p)
            c //= p
        f = tuple(tail) + (1,)
        if all(
            not divides(list(d), f)
            for deg in range(1, t)
            for d in monics(deg)
        ):
            return f
    raise AssertionError


def test_modulus_examples():
    assert build_field(3, 1).modulus == (0, 1)
    assert build_field(3, 2).modulus == (1, 0, 1)  # X^2 + 1
    assert build_field(5, 2).modulus == (2, 0, 1)  # X^2 + 2


@pytest.mark.parametrize("p,t", [(3, 2), (5, 2), (3, 3), (7, 2)])
def test_modulus_matches_exhaustive_scan(p, t):
    assert build_field(p, t).modulus == brute_force_modulus(p, t)


def test_composite_p_rejected():
    with pytest.raises(CompositeP):
        build_field(9, 1)
    with pytest.raises(CompositeP):
        build_field(15, 2)


def test_enumeration_order_and_cardinality():
    f3 = build_field(3, 1)
    assert [e.code for e in enumerate_field(f3)] == [0, 1, 2]
    f9 = build_field(3, 2)
    els = enumerate_field(f9)
    assert len(els) == 9 and len(set(els)) == 9
    assert els[0].code == 0 and els[1] == f9.one


def test_gf9_x_squared_is_minus_one():
    f9 = build_field(3, 2)
    x = f9.element((0, 1))
    assert (x * x).coeffs == (2, 0)


def test_inverse_and_division():
    for p, t in [(3, 2), (5, 1), (3, 3)]:
        f = build_field(p, t)
        assert f.one.inverse() == f.one
        for a in enumerate_field(f)[1:]:
            assert a * a.inverse() == f.one
        with pytest.raises(DivisionByZero):
            f.zero.inverse()


def test_frobenius_order_t():
    f9 = build_field(3, 2)
    for a in enumerate_field(f9):
        assert a.frobenius().frobenius() == a
        assert a.frobenius() == a**3


def test_field_mismatch():
    a = build_field(3, 2).one
    b = build_field(5, 2).one
    with pytest.raises(FieldMismatch):
        a + b


def test_field_arithmetic_dispatch():
    f = build_field(3, 2)
    a, b = f.element(5), f.element(7)
    assert field_arithmetic(a, b, "add") == a + b
    assert field_arithmetic(a, b, "sub") == a - b
    assert field_arithmetic(a, b, "mul") == a * b
    assert field_arithmetic(a, op="inv") == a.inverse()
    assert field_arithmetic(a, op="pow", n=4) == a**4
    assert field_arithmetic(a, op="frobenius") == a.frobenius()


@pytest.mark.parametrize("p,t", [(3, 1), (3, 2), (5, 2), (3, 4)])
def test_algebraic_properties_randomized(p, t):
    f = build_field(p, t)
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = (f.element(rng.randrange(f.q)) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p,t", [(3, 1), (3, 2), (3, 3), (5, 2), (3, 4)])
def test_frobenius_fixed_point_exhaustive(p, t):
    f = build_field(p, t)
    assert f.q <= 81
    for a in enumerate_field(f):
        assert a ** f.q == a


@pytest.mark.parametrize("p,t", [(3, 1), (3, 2), (3, 3), (5, 2), (3, 4)])
def test_multiplicative_group_cyclic(p, t):
    """Some element has order exactly q-1 (exhaustive order computation)."""
    f = build_field(p, t)

    def order(a):
        k, acc = 1, a
        while acc != f.one:
            acc = acc * a
            k += 1
        return k

    orders = {order(a) for a in enumerate_field(f)[1:]}
    assert max(orders) == f.q - 1
    assert all((f.q - 1) % o == 0 for o in orders)


def test_lucas_binomials():
    import math

    for n in range(40):
        for k in range(40):
            for p in (3, 5, 7):
                assert binom_mod_p(n, k, p) == math.comb(n, k) % p if k <= n else True
