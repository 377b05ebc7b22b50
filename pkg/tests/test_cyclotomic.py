import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weilspec import cyclotomic as cy
from weilspec.cyclotomic import CycInt, Histogram, QuadDecomp
from weilspec.errors import BadIndex, MixedPrime, WrongResidue

z5 = lambda k: CycInt.zeta_power(5, k)  # noqa: E731


def test_ring_examples():
    one_plus = CycInt.from_int(5, 1) + z5(1)
    assert one_plus * 1 == one_plus
    assert (z5(1) + z5(2) + z5(3) + z5(4)).coeffs == (-1, 0, 0, 0)
    assert z5(1) * z5(4) == 1
    with pytest.raises(MixedPrime):
        cy.add(z5(1), CycInt.zeta_power(7, 1))


def test_galois_examples():
    a = z5(1) + z5(4)
    assert cy.galois_apply(a, 1) == a
    assert cy.galois_apply(a, 2) == z5(2) + z5(3)
    with pytest.raises(BadIndex):
        cy.galois_apply(a, 5)


def test_rationality_examples():
    assert cy.is_rational(CycInt.from_int(5, 7)) == 7
    assert cy.is_rational(z5(1)) is None
    assert cy.is_rational(-1 - z5(1) - z5(2) - z5(3)) is None


def test_quadratic_examples():
    g = z5(1) + z5(4) - z5(2) - z5(3)
    assert cy.quad_decompose(g) == QuadDecomp(0, 2, 5)
    assert g == cy.gauss_sum_quadratic(5)
    assert cy.quad_decompose(3 + z5(1) + z5(4)) == QuadDecomp(5, 1, 5)
    assert cy.quad_decompose(z5(1)) is None
    with pytest.raises(WrongResidue):
        cy.quad_decompose(CycInt.zeta_power(7, 1))


def test_valuation_examples():
    assert cy.vp_int(50, 5) == 2
    assert cy.vp_int(3, 5) == 0
    assert cy.vp_int(0, 5) == math.inf


def test_complex_embedding_examples():
    assert cy.complex_embed(CycInt.from_int(5, 1)) == 1
    assert abs(abs(cy.complex_embed(cy.gauss_sum_quadratic(5))) - math.sqrt(5)) < 1e-9
    assert abs(cy.complex_embed(3 + z5(1) + z5(4)) - (5 + math.sqrt(5)) / 2) < 1e-9


@pytest.mark.parametrize("p", [5, 13, 17, 29])
def test_gauss_sum_squares_to_p(p):
    g = cy.gauss_sum_quadratic(p)
    assert g * g == p
    assert cy.quad_decompose(g) == QuadDecomp(0, 2, p)


def test_render():
    assert cy.render(CycInt.from_int(3, -4)) == "-4"
    assert cy.render(3 + z5(1) + z5(4)) == "(5+1*sqrt(5))/2"
    assert cy.render(CycInt.zeta_power(7, 1)) == "1*z (p=7)"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_histograms_reduce_injectively(p):
    # histograms with equal totals give equal values only when identical
    for total in range(1, 7):
        seen = {}
        for w in itertools.product(range(total + 1), repeat=p):
            if sum(w) != total:
                continue
            v = Histogram(p, w).reduce()
            assert v not in seen, (w, seen.get(v))
            seen[v] = w


PRIMES = [2, 3, 5, 7, 11]


@st.composite
def cyc_triples(draw):
    p = draw(st.sampled_from(PRIMES))
    coeffs = st.lists(st.integers(-6, 6), min_size=p - 1, max_size=p - 1).map(tuple)
    return p, [CycInt(p, draw(coeffs)) for _ in range(3)]


@settings(max_examples=150, deadline=None)
@given(cyc_triples())
def test_ring_axioms(data):
    p, (a, b, c) = data
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a ** 3 == a * a * a


@settings(max_examples=150, deadline=None)
@given(cyc_triples(), st.integers(1, 100))
def test_galois_is_ring_automorphism(data, j):
    p, (a, b, _) = data
    if j % p == 0:
        return
    assert cy.galois_apply(a * b, j) == cy.galois_apply(a, j) * cy.galois_apply(b, j)
    assert cy.galois_apply(a + b, j) == cy.galois_apply(a, j) + cy.galois_apply(b, j)
    g = cy.galois_generator(p)
    x = a
    for _ in range(p - 1):
        x = cy.galois_apply(x, g)
    assert x == a


@settings(max_examples=150, deadline=None)
@given(cyc_triples())
def test_conj_matches_complex_conjugate(data):
    _, (a, _, _) = data
    assert abs(cy.complex_embed(cy.conj(a)) - cy.complex_embed(a).conjugate()) < 1e-9
    assert abs(cy.complex_embed(a * a.conj()).imag) < 1e-9


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([5, 13, 17]), st.integers(-40, 40), st.integers(-40, 40))
def test_quad_roundtrip(p, i, j):
    if (i - j) % 2:
        j += 1
    d = QuadDecomp(i, j, p)
    v = cy.from_quad(d)
    assert cy.quad_decompose(v) == d
    assert abs(cy.complex_embed(v) - d.to_float()) < 1e-8
