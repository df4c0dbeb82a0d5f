import dataclasses
import random
from fractions import Fraction as F

import numpy as np
import pytest

from catalgebra import algebra as alg
from catalgebra import fincat
from catalgebra.errors import Mismatch, NotPSD, UnsupportedRig
from catalgebra.fincat import canonical_dagger
from catalgebra.gns import (
    build_pre_hilbert,
    build_semi_hilbert,
    pairing,
    represent,
    verify_gns,
    verify_star_representation,
)
from catalgebra.matrixkit import DenseMatrix, mat_vec
from catalgebra.rigs import COMPLEX, RATIONAL
from catalgebra.states import LinearFunctional, probability_space

Q = RATIONAL


def space(cat, rig, kind, values):
    return probability_space(LinearFunctional(cat, rig, tuple(values)), canonical_dagger(cat, kind))


def z2_space(t, rig=COMPLEX):
    cat = fincat.cyclic_group(2)
    one = rig.one
    return space(cat, rig, "inverse", (one, complex(t) if rig is COMPLEX else F(t)))


def test_discrete_gram():
    cat = fincat.discrete(2)
    g = build_semi_hilbert(space(cat, Q, "identity", (F(1, 2), F(1, 2))))
    assert g.gram.to_rows() == [[F(1, 2), 0], [0, F(1, 2)]]
    assert g.cyclic == (1, 1)


def test_z2_gram_and_rep():
    g = build_semi_hilbert(z2_space(F(1, 2), Q))
    assert g.gram.to_rows() == [[1, F(1, 2)], [F(1, 2), 1]]
    # left multiplication by g swaps the two basis vectors
    assert g.rep[1].to_rows() == [[0, 1], [1, 0]]
    assert g.rep[0].to_rows() == [[1, 0], [0, 1]]


def test_s3_delta_gram_is_identity():
    cat = fincat.symmetric_group(3)
    delta = [F(1) if cat.is_identity(c) else F(0) for c in cat.arrows]
    g = build_semi_hilbert(space(cat, Q, "inverse", delta))
    assert g.gram == DenseMatrix.identity(Q, 6)
    assert verify_gns(g, 50, rng=random.Random(1)).ok


def test_pairing_and_represent():
    g = build_semi_hilbert(z2_space(F(1, 2), Q))
    assert pairing(g, g.cyclic, g.cyclic) == 1
    assert pairing(g, [F(1), F(0)], [F(0), F(1)]) == F(1, 2)
    cat = g.category
    a = alg.element(cat, Q, [2, 3])
    M = represent(g, a)
    assert mat_vec(M, list(g.cyclic)) == [2, 3]  # pi(a) e = a
    assert M.to_rows() == [[2, 3], [3, 2]]
    with pytest.raises(Mismatch):
        pairing(g, [F(1)], [F(1)])
    with pytest.raises(Mismatch):
        represent(g, alg.unit(fincat.chain(2), Q))


def test_verify_gns_exact_and_complex():
    rng = random.Random(2)
    rep = verify_gns(build_semi_hilbert(z2_space(F(1, 2), Q)), 40, rng=rng)
    assert rep.ok and rep.max_residual == 0
    rep = verify_gns(build_semi_hilbert(z2_space(0.3)), 40, rng=rng)
    assert rep.ok and rep.max_residual <= 1e-9
    assert "reconstruction" in str(rep)


def test_corrupted_gram_is_detected():
    g = build_semi_hilbert(z2_space(F(1, 2), Q))
    bad = dataclasses.replace(g, gram=DenseMatrix.from_rows(Q, [[F(1), F(1, 3)], [F(1, 2), F(1)]]))
    rep = verify_gns(bad, 20, rng=random.Random(3))
    assert not rep.ok
    assert not rep.get("gram hermitian").passed


@pytest.mark.parametrize("t,dim", [(1.0, 1), (-1.0, 1), (0.0, 2), (0.5, 2)])
def test_z2_quotient_dims(t, dim):
    p = build_pre_hilbert(build_semi_hilbert(z2_space(t)))
    assert p.quotient_dim == dim
    assert p.kernel_invariance <= 1e-9
    rep = verify_star_representation(p, 50, rng=random.Random(4))
    assert rep.ok, str(rep)


def test_z2_quotient_rep_values():
    # at t=1 the class of g equals the class of e, so g acts as 1
    p = build_pre_hilbert(build_semi_hilbert(z2_space(1.0)))
    assert np.allclose(p.rep_q[1], [[1]])
    p = build_pre_hilbert(build_semi_hilbert(z2_space(-1.0)))
    assert np.allclose(p.rep_q[1], [[-1]])
    p = build_pre_hilbert(build_semi_hilbert(z2_space(0.0)))
    r = p.rep_q[1]
    assert np.allclose(r @ r, np.eye(2)) and np.allclose(r, r.conj().T)
    assert np.allclose(np.linalg.eigvalsh(r), [-1, 1])


def test_indiscrete_trace_quotient():
    cat = fincat.indiscrete(2)
    trace = [0.5 + 0j if cat.is_identity(c) else 0j for c in cat.arrows]
    p = build_pre_hilbert(build_semi_hilbert(space(cat, COMPLEX, "reverse", trace)))
    assert p.quotient_dim == 4
    rep = verify_star_representation(p, 50, rng=random.Random(5))
    assert rep.ok


def test_vector_state_quotient_has_dim_two():
    # phi(a) = <e1|M(a) e1> on 2x2 matrices: kernel = matrices with zero first column
    cat = fincat.indiscrete(2)
    vals = [1 + 0j if cat.arrow_labels[c] == "c11" else 0j for c in cat.arrows]
    p = build_pre_hilbert(build_semi_hilbert(space(cat, COMPLEX, "reverse", vals)))
    assert p.quotient_dim == 2
    assert verify_star_representation(p, 30, rng=random.Random(6)).ok


def test_cauchy_schwarz_residual_is_zero_for_states():
    p = build_pre_hilbert(build_semi_hilbert(z2_space(0.5)))
    rep = verify_star_representation(p, 10, rng=random.Random(7), cs_trials=500)
    check = rep.get("Cauchy-Schwarz")
    assert check.trials == 500 and check.passed


def test_coords_of_cyclic_vector():
    p = build_pre_hilbert(build_semi_hilbert(z2_space(0.5)))
    assert np.allclose(p.coords(p.ambient.cyclic), p.cyclic_q)


def test_pre_hilbert_rejects_exact_rigs():
    with pytest.raises(UnsupportedRig):
        build_pre_hilbert(build_semi_hilbert(z2_space(F(1, 2), Q)))


def test_pre_hilbert_rejects_indefinite_gram():
    g = build_semi_hilbert(z2_space(0.5))
    bad = dataclasses.replace(g, gram=DenseMatrix.from_rows(COMPLEX, [[1 + 0j, 2 + 0j], [2 + 0j, 1 + 0j]]))
    with pytest.raises(NotPSD):
        build_pre_hilbert(bad)
