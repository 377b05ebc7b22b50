import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weilspec import algebraic_sets as al
from weilspec import finite_field as ff
from weilspec import group_algebra as ga
from weilspec import weil
from weilspec.cyclotomic import CycInt
from weilspec.errors import MixedField
from weilspec.group_algebra import GroupAlgebraElement as GA


def field(q):
    return ff.make_field(*ff.prime_power(q))


def test_convolution_identity_and_units():
    K = field(7)
    S = ga._random_element(K, random.Random(0))
    one = GA.basis(K, K.one)
    assert S * one == S
    Kx = GA.units(K)
    for t in range(1, 6):
        if math.gcd(t, 6) == 1:
            assert Kx.twist(t) == Kx
    assert Kx.conj() == Kx


def test_mixed_fields_rejected():
    with pytest.raises(MixedField):
        GA.units(field(5)) + GA.units(field(7))


def test_psi_and_w_totals():
    K = field(5)
    assert ga.psi_element(K).total() == -1
    W = ga.weil_element(K, 3)
    assert W.total() == 5
    assert W * W.conj() == GA.basis(K, K.one) * 25


def test_weil_element_matches_spectrum():
    K = field(9)
    W = ga.weil_element(K, 5)
    spec = weil.spectrum(K, 5)
    for u, v in spec.per_u.items():
        assert W[u] == v


def test_bracket_examples():
    K = field(7)
    s = 5
    W = ga.weil_element(K, s)
    assert ga.w_bracket(K, s, (K.one,)) == W
    units = ff.units(K)
    for t1 in units:
        for t2 in units:
            tot = ga.w_bracket(K, s, (t1, t2)).total()
            assert tot == (49 if t1 == t2 else 0)
    t = (K.element(2), K.element(3), K.element(6))
    v = al.v_bracket(K, s, t[:2])
    assert ga.w_bracket(K, s, t).total() == 49 * v[ff.inv(K, t[2])]


def test_bracket_factors_through_v_f7():
    K = field(7)
    t = (K.one, K.one)
    assert ga.w_bracket(K, 5, t) == ga.weil_element(K, 5) * ga.v_element(K, 5, t)


def test_w_from_psi_f5():
    K = field(5)
    Psi = ga.psi_element(K)
    lhs = ga.weil_element(K, 3)
    rhs = Psi * Psi.twist(ff.mod_inverse(3, 4)).conj() + GA.units(K)
    assert lhs.coeffs == rhs.coeffs


def test_omega_cubes_f5():
    K = field(5)
    W = ga.weil_element(K, 3)
    V = al.v_table(K, 3)
    m1 = ff.neg(K, K.one)
    cubes = CycInt.from_int(5, 0)
    for u in ff.units(K):
        omega = W[u] + W[ff.mul(K, m1, u)]
        cubes = cubes + omega**3
    assert cubes == 2 * 25 * (V[K.one] + 3 * V[m1])


def test_characters_examples():
    K = field(5)
    table = ga.character_table(K)
    assert abs(ga.gauss_sum(table, 0) + 1) < 1e-9
    assert abs(abs(ga.gauss_sum(table, 1)) - math.sqrt(5)) < 1e-9
    Kx = GA.units(K)
    for j in range(1, 4):
        assert abs(ga.fourier_coefficient(Kx, j, table)) < 1e-9
    assert np.allclose(table.values[0], 1)


def test_fourier_inversion_roundtrip():
    K = field(11)
    table = ga.character_table(K)
    S = ga._random_element(K, random.Random(3))
    back = ga.fourier_inverse(ga.fourier_transform(S, table), table)
    assert np.allclose(back, ga.embed_coeffs(S), atol=1e-9)


@st.composite
def elements(draw, K):
    p = K.p
    coeff = st.lists(st.integers(-3, 3), min_size=p - 1, max_size=p - 1).map(tuple)
    return GA(K, [CycInt(p, draw(coeff)) for _ in range(K.q - 1)])


K7 = field(7)


@settings(max_examples=40, deadline=None)
@given(elements(K7), elements(K7), elements(K7), st.integers(-20, 20))
def test_algebra_laws(S, T, R, t):
    assert S * T == T * S
    assert (S * T) * R == S * (T * R)
    assert S * (T + R) == S * T + S * R
    assert (S * T).conj() == S.conj() * T.conj()
    assert (S * T).twist(t) == S.twist(t) * T.twist(t)
    assert (S * T).total() == S.total() * T.total()
    assert S.twist(t).total() == S.total()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_verify_identities_pass(q):
    K = field(q)
    for s in weil.exponent_classes(q, K.p):
        rep = ga.verify_identities(K, s)
        assert rep.ok, str(rep)
        assert ga.verify_characters(K).ok


def test_verify_detects_wrong_weil_element(monkeypatch):
    K = field(7)
    real = ga.weil_element

    def perturbed(K_, s_):
        W = real(K_, s_)
        coeffs = list(W.coeffs)
        coeffs[0] = coeffs[0] + 1
        return GA(K_, coeffs)

    monkeypatch.setattr(ga, "weil_element", perturbed)
    rep = ga.verify_identities(K, 5)
    failed = {r.name for r in rep.failures()}
    assert {"w_from_psi", "w_norm", "w_total"} <= failed


def test_p2_skips_sign_identities():
    rep = ga.verify_identities(field(8), 3)
    assert rep.ok
    assert rep.results["phi_factor"].witness.startswith("n/a")
