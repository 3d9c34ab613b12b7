import numpy as np
import pytest

from polyqec.galois import (
    SUPPORTED_ORDERS,
    FieldElement,
    FieldMismatchError,
    SymbolError,
    UnsupportedFieldError,
    field_of_order,
    make_field,
    symbol_decode,
    symbol_encode,
)


def test_make_field_prime():
    f = make_field(13)
    assert (f.p, f.m, f.q) == (13, 1, 13)


def test_make_field_extension():
    f = make_field(3, 2)
    assert f.q == 9
    assert f.modulus == (1, 0, 1)  # x^2 + 1


def test_make_field_rejects_large_order():
    with pytest.raises(UnsupportedFieldError):
        make_field(2, 5)  # 32 > 29


def test_make_field_rejects_nonprime():
    with pytest.raises(UnsupportedFieldError):
        make_field(4, 1)


def test_field_of_order_covers_all_supported():
    for q in SUPPORTED_ORDERS:
        f = field_of_order(q)
        assert f.q == q
        assert f.p ** f.m == q


def test_documented_moduli():
    expected = {
        4: (1, 1, 1),
        8: (1, 1, 0, 1),
        9: (1, 0, 1),
        16: (1, 1, 0, 0, 1),
        25: (2, 0, 1),
        27: (1, 2, 0, 1),
    }
    for q, modulus in expected.items():
        assert field_of_order(q).modulus == modulus


def test_modulus_is_irreducible_by_trial_factorization():
    # no monic polynomial of degree <= m/2 divides the modulus
    from polyqec.polyring import Poly, poly_divmod
    import itertools

    for q in (4, 8, 9, 16, 25, 27):
        f = field_of_order(q)
        base = make_field(f.p)
        modulus = Poly(list(f.modulus), base)
        for d in range(1, f.m // 2 + 1):
            for tail in itertools.product(range(f.p), repeat=d):
                g = Poly(list(tail) + [1], base)
                assert not poly_divmod(modulus, g)[1].is_zero()


def test_inverse_example_gf13():
    f = make_field(13)
    assert f.inv(2) == 7
    assert f.mul(2, 7) == 1


def test_negation_example_gf5():
    f = make_field(5)
    assert f.neg(3) == 2


def test_multiplicative_identity_all_fields():
    for q in SUPPORTED_ORDERS:
        f = field_of_order(q)
        for a in range(q):
            assert f.mul(a, 1) == a


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        make_field(7).inv(0)


def test_mixed_field_operands_raise():
    a = make_field(5).element(2)
    b = make_field(7).element(2)
    with pytest.raises(FieldMismatchError):
        a + b


def test_element_operators():
    f = make_field(11)
    a, b = f.element(7), f.element(6)
    assert (a + b).index == 2
    assert (a - b).index == 1
    assert (a * b).index == (7 * 6) % 11
    assert (a / b) * b == a
    assert (-a + a).index == 0
    assert (a ** 10).index == 1


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_field_axioms_exhaustive(q):
    """Commutativity, associativity, distributivity, inverses, Fermat."""
    f = field_of_order(q)
    add, mul = f.add_table, f.mul_table
    assert np.array_equal(add, add.T)
    assert np.array_equal(mul, mul.T)
    for a in range(q):
        assert f.inv(f.inv(a)) == a if a else True
        if a:
            assert f.mul(a, f.inv(a)) == 1
            assert f.pow(a, q - 1) == 1  # Lagrange
        for b in range(q):
            for c in range(q):
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_symbol_scheme():
    f17 = make_field(17)
    assert symbol_encode(15, f17) == "F"
    assert symbol_encode(0, f17) == "0"
    assert symbol_decode("C", make_field(13)).index == 12
    assert symbol_decode("G", f17).index == 16


def test_symbol_round_trip():
    for q in SUPPORTED_ORDERS:
        f = field_of_order(q)
        if q > 18:
            with pytest.raises(SymbolError):
                symbol_encode(0, f)
            continue
        for i in range(q):
            e = f.element(i)
            assert symbol_decode(symbol_encode(e), f) == e


def test_symbol_out_of_range():
    with pytest.raises(SymbolError):
        symbol_decode("5", make_field(5))  # 5 is not an element of GF(5)
    with pytest.raises(SymbolError):
        symbol_decode("Z", make_field(17))


def test_fields_are_interned():
    assert make_field(13) is make_field(13)
    assert field_of_order(9) is make_field(3, 2)
