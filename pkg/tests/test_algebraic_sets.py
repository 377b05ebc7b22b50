import itertools
import random

import numpy as np
import pytest

from weilspec import algebraic_sets as al
from weilspec import finite_field as ff
from weilspec import weil
from weilspec.errors import NotInvertibleExponent, TooLargeK, ZeroCoefficient


def field(q):
    return ff.make_field(*ff.prime_power(q))


@pytest.mark.parametrize("q, s", [(3, 1), (4, 1), (5, 3), (7, 5), (8, 3)])
def test_routes_agree_with_brute_force(q, s):
    K = field(q)
    elems = ff.enumerate_field(K)
    units = elems[1:]
    rng = random.Random(q)
    for k in (1, 2):
        for t in itertools.product(units, repeat=k):
            table = al.q_table(K, s, t)
            a, b = rng.choice(elems), rng.choice(elems)
            query = al.QQuery(tuple(t), a, b)
            brute = al.q_count_brute(K, s, query)
            assert al.q_count(K, s, query) == brute
            assert table[K.code(a), K.code(b)] == brute


def test_brute_force_k3_sample():
    K = field(5)
    rng = random.Random(7)
    elems = ff.enumerate_field(K)
    for _ in range(10):
        t = tuple(rng.choice(elems[1:]) for _ in range(3))
        query = al.QQuery(t, rng.choice(elems), rng.choice(elems))
        assert al.q_count(K, 3, query) == al.q_count_brute(K, 3, query)


def test_k1_closed_form():
    K = field(7)
    for t1, a, b in itertools.product(range(1, 7), range(7), range(7)):
        want = int((t1 * b) % 7 == a)
        q = al.QQuery((K.element(t1),), K.element(a), K.element(b))
        assert al.q_count(K, 5, q) == want


@pytest.mark.parametrize("q", [4, 5, 7, 9])
def test_k2_diagonal_zero_target(q):
    K = field(q)
    s = weil.exponent_classes(q, K.p)[-1]
    assert al.q_count(K, s, al.QQuery((K.one, K.one), K.zero, K.zero)) == q


def test_permuting_t_permutes_nothing():
    K = field(9)
    rng = random.Random(1)
    for _ in range(10):
        t = [K.from_code(rng.randrange(1, 9)) for _ in range(3)]
        base = al.q_table(K, 5, t)
        for perm in itertools.permutations(t):
            assert np.array_equal(al.q_table(K, 5, perm), base)


def test_f5_parity_location():
    K = field(5)
    s = 3
    w_star = ff.pow(K, K.element(2), (ff.mod_inverse(s, 4) - 1) % 4)
    table = al.q_table(K, s, (K.one, K.one))
    odd = [w for w in range(5) if table[1, w] % 2 == 1]
    assert odd == [K.code(w_star)]


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_u_and_v_tables(q):
    K = field(q)
    for s in weil.exponent_classes(q, K.p):
        U, V = al.u_table(K, s), al.v_table(K, s)
        assert U.total() == 0 and V.total() == q
        m1 = ff.neg(K, K.one)
        assert U[K.one] == U[m1] == V[m1]
        for t1, t2 in itertools.product(ff.units(K), repeat=2):
            assert al.v_bracket(K, s, (t1, t2)).total() == (q if t1 == t2 else 0)


def test_argument_validation():
    K = field(5)
    with pytest.raises(TooLargeK):
        al.q_table(K, 3, [K.one] * 5)
    with pytest.raises(ZeroCoefficient):
        al.q_count(K, 3, al.QQuery((K.one, K.zero), K.one, K.one))
    with pytest.raises(NotInvertibleExponent):
        al.q_table(K, 2, [K.one])


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_verify_q_lemmas_small(q):
    K = field(q)
    for s in weil.exponent_classes(q, K.p):
        rep = al.verify_q_lemmas(K, s)
        assert rep.ok, str(rep)


def test_verify_catches_corrupted_counts(monkeypatch):
    K = field(5)
    real = al.hyperplane_counts

    def off_by_one(K_, s_, t_):
        out = np.array(real(K_, s_, t_))
        out[1] += 1
        return out

    monkeypatch.setattr(al, "hyperplane_counts", off_by_one)
    rep = al.verify_q_lemmas(K, 3, k_max=2)
    assert not rep.ok
    assert "v_total" in {r.name for r in rep.failures()}
