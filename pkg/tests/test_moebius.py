import random
from fractions import Fraction as F

import pytest

from catalgebra import algebra as alg
from catalgebra import fincat
from catalgebra.errors import InversionFailure, NotInvertible, UnsupportedRig
from catalgebra.moebius import invert, mobius, mobius_inversion, zeta
from catalgebra.rigs import COMPLEX, NATURAL, RATIONAL, TROPICAL

from oracles import arithmetic_mobius, arithmetic_mobius_by_factoring, poset_mobius

Q = RATIONAL


def arrow_between(cat, a, b):
    (c,) = cat.hom(a, b)
    return c


def test_zeta_is_all_ones():
    cat = fincat.divisor_poset(12)
    assert all(v == 1 for v in zeta(cat, Q).coeffs) and len(zeta(cat, Q)) == 18


def test_chain_mobius():
    cat = fincat.chain(3)
    mu = mobius(cat, Q)
    expect = {"0": 1, "1": 1, "2": 1, "0->1": -1, "1->2": -1, "0->2": 0}
    assert {cat.arrow_labels[c]: mu[c] for c in cat.arrows} == expect


@pytest.mark.parametrize("n", [12, 30, 36, 60])
def test_divisor_mobius_matches_oracles(n):
    cat = fincat.divisor_poset(n)
    cert = invert(zeta(cat, Q))
    assert cert.valid and cert.max_residual == 0
    ds = fincat.divisors(n)
    rel = [(i, j) for i, a in enumerate(ds) for j, b in enumerate(ds) if b % a == 0]
    rec = poset_mobius(len(ds), rel)
    for (i, j), val in rec.items():
        c = arrow_between(cat, i, j)
        assert cert.inverse[c] == val == arithmetic_mobius(ds[j] // ds[i])


def test_divisors_12_examples():
    cat = fincat.divisor_poset(12)
    mu = mobius(cat, Q)
    one = cat.object_index("1")
    assert mu[arrow_between(cat, one, cat.object_index("12"))] == 0
    assert mu[arrow_between(cat, one, cat.object_index("6"))] == 1


def test_two_oracles_agree():
    for n in range(1, 200):
        assert arithmetic_mobius(n) == arithmetic_mobius_by_factoring(n)


def test_boolean_lattice_b2():
    cat = fincat.boolean_lattice(2)
    mu = mobius(cat, Q)
    for c in cat.arrows:
        k = bin(cat.dom[c] ^ cat.cod[c]).count("1")
        assert mu[c] == (-1) ** k
    assert mu[arrow_between(cat, 0, 3)] == 1


def test_indiscrete_zeta_is_singular():
    # all-ones 2x2 matrix has rank 1
    with pytest.raises(NotInvertible):
        invert(zeta(fincat.indiscrete(2), Q))


def test_invert_matrix_element():
    cat = fincat.indiscrete(2)
    a = alg.from_matrix(cat, Q, [[F(2), F(1)], [F(1), F(1)]])
    inv = invert(a).inverse
    assert alg.to_matrix(inv).to_rows() == [[1, -1], [-1, 2]]


def test_invert_group_element_complex():
    cat = fincat.cyclic_group(3)
    a = alg.element(cat, COMPLEX, [2, 1j, 0])
    cert = invert(a)
    assert cert.max_residual < 1e-12


def test_zeta_on_free_category():
    cat = fincat.free_on_acyclic_quiver(3, [(0, 1, "a"), (1, 2, "b")])
    mu = mobius(cat, Q)
    # iota^a and iota^b get -1, the composite b.a gets 0 since the category is a chain
    assert mu[cat.arrow_index("a")] == -1 and mu[cat.arrow_index("b.a")] == 0


def test_unsupported_rigs():
    with pytest.raises(UnsupportedRig):
        invert(zeta(fincat.chain(2), NATURAL))
    with pytest.raises(UnsupportedRig):
        invert(zeta(fincat.chain(2), TROPICAL))


def test_mobius_inversion_chain():
    cat = fincat.chain(3)
    f = alg.element(cat, Q, [1, 2, 3, 4, 5, 6])
    g = mobius_inversion(f)
    assert g == alg.convolve(zeta(cat, Q), f)
    back = mobius_inversion(g, "mu_then_zeta")
    assert back == alg.convolve(mobius(cat, Q), g)
    with pytest.raises(ValueError):
        mobius_inversion(f, "sideways")


def test_mobius_inversion_divisors_random():
    cat = fincat.divisor_poset(60)
    mu = mobius(cat, Q)
    rng = random.Random(2)
    for _ in range(50):
        f = alg.random_element(cat, Q, rng)
        mobius_inversion(f, mu=mu)
        mobius_inversion(f, "mu_then_zeta", mu=mu)


def test_mobius_inversion_detects_wrong_mu():
    cat = fincat.chain(2)
    with pytest.raises(InversionFailure):
        mobius_inversion(alg.unit(cat, Q), mu=zeta(cat, Q))
