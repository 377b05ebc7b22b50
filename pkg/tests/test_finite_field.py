import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import OracleField
from weilspec import finite_field as ff
from weilspec.errors import DivisionByZero, NotCoprime, NotPrime, Reducible, TooLarge

SMALL_Q = [q for q in range(2, 65) if ff.prime_power(q)]


def field(q):
    return ff.make_field(*ff.prime_power(q))


def test_prime_field_construction():
    K = ff.make_field(5)
    assert (K.p, K.n, K.q) == (5, 1, 5)
    assert ff.enumerate_field(K) == [K.element(i) for i in range(5)]


def test_explicit_modulus_accepted():
    K = ff.make_field(2, 3, [1, 1, 0, 1])
    assert K.modulus == (1, 1, 0, 1)


def test_rejects_composite_and_reducible():
    with pytest.raises(NotPrime):
        ff.make_field(4, 1)
    with pytest.raises(Reducible):
        ff.make_field(2, 2, [1, 0, 1])  # (x+1)^2
    with pytest.raises(TooLarge):
        ff.make_field(2, 21)


def test_default_modulus_is_smallest_irreducible():
    assert ff.make_field(2, 3).modulus == (1, 0, 1, 1)
    assert ff.make_field(3, 2).modulus == (1, 0, 1)
    assert ff.make_field(7).modulus == (0, 1)


@pytest.mark.parametrize(
    "text, q, modulus",
    [("5", 5, (0, 1)), ("2^3", 8, (1, 0, 1, 1)), ("9", 9, (1, 0, 1)), ("2^3:1,1,0,1", 8, (1, 1, 0, 1))],
)
def test_parse_field(text, q, modulus):
    K = ff.parse_field(text)
    assert K.q == q and K.modulus == modulus
    assert ff.parse_field(str(K)) == K


@pytest.mark.parametrize("bad", ["6", "4^1", "2^2:1,0,1", "x", "2^"])
def test_parse_field_rejects(bad):
    with pytest.raises(ValueError):
        ff.parse_field(bad)


def test_trace_examples():
    K4 = ff.make_field(2, 2, [1, 1, 1])
    assert ff.trace(K4, K4.element([0, 1])) == 1
    K7 = ff.make_field(7)
    assert all(ff.trace(K7, K7.element(i)) == i for i in range(7))
    assert ff.trace(field(27), field(27).zero) == 0


def test_inverse_and_power_examples():
    K5 = ff.make_field(5)
    assert ff.inv(K5, K5.element(2)) == K5.element(3)
    K8 = ff.make_field(2, 3, [1, 1, 0, 1])
    assert ff.pow(K8, K8.element([0, 1]), 7) == K8.one
    assert ff.pow(K8, K8.zero, 0) == K8.one
    with pytest.raises(DivisionByZero):
        ff.inv(K5, K5.zero)


def test_primitive_roots():
    assert ff.primitive_root_mod_p(5) == 2
    assert ff.primitive_root_mod_p(7) == 3
    K9 = field(9)
    assert ff.element_order(K9, ff.primitive_element(K9)) == 8


def test_exponent_helpers():
    assert ff.is_invertible_exponent(5, 3)
    assert not ff.is_invertible_exponent(5, 2)
    assert ff.mod_inverse(3, 4) == 3
    with pytest.raises(NotCoprime):
        ff.mod_inverse(2, 4)


def test_enumeration_order():
    assert [str(x) for x in ff.enumerate_field(ff.make_field(2))] == ["0", "1"]
    K = field(9)
    assert [K.code(x) for x in ff.enumerate_field(K)] == list(range(9))
    assert len(ff.units(K)) == 8


@pytest.mark.parametrize("q", SMALL_Q)
def test_tables_agree_with_element_arithmetic(q):
    K = field(q)
    T = ff.tables(K)
    elems = ff.enumerate_field(K)
    rng = np.random.default_rng(q)
    pairs = list(itertools.product(range(q), repeat=2))
    if len(pairs) > 400:
        pairs = [tuple(x) for x in rng.integers(0, q, size=(400, 2))]
    for a, b in pairs:
        x, y = elems[a], elems[b]
        assert T.add(np.array([a]), np.array([b]))[0] == K.code(ff.add(K, x, y))
        assert T.mul(np.array([a]), np.array([b]))[0] == K.code(ff.mul(K, x, y))
    for a in range(1, q):
        assert T.exp[T.log[a]] == a
        assert K.code(ff.inv(K, elems[a])) == T.inv(np.array([a]))[0]
    assert sorted(T.exp.tolist()) == list(range(1, q))


@pytest.mark.parametrize("q", SMALL_Q)
def test_trace_and_frobenius(q):
    K = field(q)
    T = ff.tables(K)
    codes = np.arange(q)
    frob = T.power(codes, K.p)
    assert np.array_equal(T.trace[frob], T.trace)
    # trace is onto F_p and balanced
    assert np.array_equal(np.bincount(T.trace, minlength=K.p), np.full(K.p, q // K.p))
    assert np.all(T.power(codes[1:], q - 1) == T.one)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_multiplication_matches_sympy_oracle(q):
    K = field(q)
    O = OracleField(K.p, K.n, K.modulus)
    for x, y in itertools.product(ff.enumerate_field(K), repeat=2):
        assert ff.mul(K, x, y).coeffs == O.mul(x.coeffs, y.coeffs)
    for x in ff.enumerate_field(K):
        assert ff.trace(K, x) == O.trace(x.coeffs)


elem = st.integers(0, 26)


@settings(max_examples=200, deadline=None)
@given(elem, elem, elem)
def test_field_axioms_f27(a, b, c):
    K = field(27)
    x, y, z = (K.from_code(v) for v in (a, b, c))
    assert ff.mul(K, x, ff.add(K, y, z)) == ff.add(K, ff.mul(K, x, y), ff.mul(K, x, z))
    assert ff.mul(K, ff.mul(K, x, y), z) == ff.mul(K, x, ff.mul(K, y, z))
    assert ff.add(K, x, ff.neg(K, x)) == K.zero
    if not y.is_zero():
        assert ff.mul(K, ff.div(K, x, y), y) == x
    assert ff.trace(K, ff.add(K, x, y)) == (ff.trace(K, x) + ff.trace(K, y)) % 3
