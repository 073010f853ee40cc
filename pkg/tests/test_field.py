import random

import pytest

from grayspace.field import (FieldContext, element_by_index, extend_field,
                             field_from_order, make_field, parse_field_spec,
                             primitive_element, rho)


def check_field_axioms(ctx, trials=200, seed=7):
    rng = random.Random(seed)
    q = ctx.q
    for _ in range(trials):
        a = rng.randrange(q)
        b = rng.randrange(q)
        c = rng.randrange(q)
        assert ctx.add(a, b) == ctx.add(b, a)
        assert ctx.mul(a, b) == ctx.mul(b, a)
        assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b),
                                                    ctx.mul(a, c))
        assert ctx.add(a, 0) == a
        assert ctx.mul(a, 1) == a
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3),
                                 (3, 2), (2, 4), (7, 1), (5, 2)])
def test_axioms(p, m):
    check_field_axioms(make_field(p, m))


def test_make_field_validation():
    with pytest.raises(ValueError):
        make_field(4, 1)
    with pytest.raises(ValueError):
        make_field(2, 0)
    with pytest.raises(ValueError):
        make_field(1, 3)


def test_known_moduli():
    # lexicographically least irreducible polynomials
    assert make_field(2, 2).modulus == (1, 1, 1)          # x^2+x+1
    assert make_field(2, 3).modulus == (1, 1, 0, 1)       # x^3+x+1
    assert make_field(3, 2).modulus == (1, 0, 1)          # x^2+1


def test_prime_field_is_mod_p():
    f7 = make_field(7, 1)
    assert f7.add(5, 4) == 2
    assert f7.mul(3, 5) == 1
    assert f7.inv(3) == 5
    assert f7.neg(2) == 5


def test_gf4_tables():
    f4 = make_field(2, 2)
    # 2 is x, 3 is x+1; x*x = x+1 under x^2+x+1
    assert f4.mul(2, 2) == 3
    assert f4.mul(2, 3) == 1
    assert f4.add(2, 3) == 1


def test_primitive_element():
    assert primitive_element(make_field(2, 1)).index == 1
    assert primitive_element(make_field(5, 1)).index == 2
    f8 = make_field(2, 3)
    a = primitive_element(f8)
    powers = set()
    cur = 1
    for _ in range(7):
        cur = f8.mul(cur, a.index)
        powers.add(cur)
    assert len(powers) == 7


def test_extend_field_tower():
    f4 = make_field(2, 2)
    f64 = extend_field(f4, 3)
    assert f64.q == 64
    assert f64.base is f4
    assert f64.degree == 3
    check_field_axioms(f64, trials=100)
    # the whole multiplicative group is generated
    a = primitive_element(f64).index
    seen = set()
    cur = 1
    for _ in range(63):
        cur = f64.mul(cur, a)
        seen.add(cur)
    assert len(seen) == 63


def test_extend_prime_field():
    f2 = make_field(2, 1)
    f32 = extend_field(f2, 5)
    assert f32.q == 32 and f32.base is f2
    check_field_axioms(f32, trials=100)


def test_field_from_order_and_spec():
    assert field_from_order(9).q == 9
    assert field_from_order(8).p == 2
    assert parse_field_spec("2^3").q == 8
    assert parse_field_spec("7").q == 7
    with pytest.raises(ValueError):
        field_from_order(6)
    with pytest.raises(ValueError):
        parse_field_spec("0")


def test_element_wrappers():
    f9 = make_field(3, 2)
    a = element_by_index(f9, 4)
    b = element_by_index(f9, 7)
    assert rho(a) == 4
    assert (a + b) - b == a
    assert (a * b) * b.inverse() == a
    other = element_by_index(make_field(2, 1), 1)
    with pytest.raises(ValueError):
        _ = a + other


def test_coeffs_roundtrip():
    f27 = make_field(3, 3)
    for i in (0, 1, 5, 13, 26):
        assert f27.from_coeffs(f27.coeffs(i)) == i
