"""GF(2^s) arithmetic checks."""

import pytest

from cosetstore.gf2 import Gf2sField, gf2s_mul


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5, 8])
def test_generator_has_full_order(s):
    f = Gf2sField(s)
    if s == 1:
        assert f.generator == 1
        return
    assert f.element_order(f.generator) == f.order - 1


@pytest.mark.parametrize("s", [3, 4, 8])
def test_field_axioms_sampled(s):
    f = Gf2sField(s)
    elems = list(range(f.order))
    sample = elems if f.order <= 16 else elems[:8] + elems[-8:]
    for a in sample:
        for b in sample:
            assert f.mul(a, b) == f.mul(b, a)
            for c in sample[:4]:
                assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
                assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)


def test_mul_identity_zero():
    f = Gf2sField(5)
    for a in range(f.order):
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0


def test_pow_matches_repeated_mul():
    f = Gf2sField(6)
    a = 0b100101 & (f.order - 1)
    acc = 1
    for e in range(20):
        assert f.pow(a, e) == acc
        acc = f.mul(acc, a)


def test_powers_of_generator_distinct():
    f = Gf2sField(4)
    pw = f.powers_of_generator(15)
    assert len(set(pw)) == 15
    assert pw[0] == 1


def test_element_order_divides_group_order():
    f = Gf2sField(4)
    for a in range(1, 16):
        assert (f.order - 1) % f.element_order(a) == 0


def test_reducible_modulus_rejected():
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2
    with pytest.raises(ValueError):
        Gf2sField(4, modulus=0b10101)


def test_irreducible_but_imprimitive_rejected():
    # x^4 + x^3 + x^2 + x + 1 is irreducible yet x has order 5
    with pytest.raises(ValueError):
        Gf2sField(4, modulus=0b11111)


def test_bad_degree_rejected():
    with pytest.raises(ValueError):
        Gf2sField(4, modulus=0b1011)
    with pytest.raises(ValueError):
        Gf2sField(0)
    with pytest.raises(ValueError):
        Gf2sField(17)


def test_out_of_range_elements():
    f = Gf2sField(3)
    with pytest.raises(ValueError):
        f.mul(8, 1)


def test_module_level_mul():
    f = Gf2sField(4)
    assert gf2s_mul(f, 2, 8) == f.mul(2, 8)
