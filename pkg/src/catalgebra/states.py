"""Linear functionals, states and noncommutative probability spaces.

A linear functional on R[C] is stored as its values on the arrows
(``phi_hat[c] = phi(iota^c)``) and evaluated by ``sum_c a(c) phi_hat(c)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .algebra import AlgebraElement, convolve, indeterminate, unit
from .errors import InvalidDagger, Mismatch, NotAState, NotCentral, UnsupportedRig
from .fincat import Dagger, FinCategory, validate_dagger
from .matrixkit import DenseMatrix, hermitian_eigen, psd_exact
from .rigs import RigDescriptor


@dataclass(frozen=True, eq=False)
class LinearFunctional:
    category: FinCategory
    rig: RigDescriptor
    phi_hat: tuple

    def __post_init__(self):
        if len(self.phi_hat) != self.category.arrow_count:
            raise Mismatch(f"expected {self.category.arrow_count} values, got {len(self.phi_hat)}")
        for c, v in enumerate(self.phi_hat):
            if not self.rig.is_central(v):
                raise NotCentral(f"value {v!r} at arrow {self.category.arrow_labels[c]} is not central")

    def __call__(self, a: AlgebraElement):
        return evaluate(self, a)

    def __repr__(self):
        lab = self.category.arrow_labels
        body = ", ".join(f"{lab[c]}: {self.rig.format(v)}" for c, v in enumerate(self.phi_hat))
        return f"LinearFunctional({{{body}}})"


def evaluate(phi: LinearFunctional, a: AlgebraElement):
    if not phi.category.same_as(a.category) or phi.rig.name != a.rig.name:
        raise Mismatch("functional and element live in different algebras")
    rig = phi.rig
    return rig.sum(rig.mul(x, v) for x, v in zip(a.coeffs, phi.phi_hat))


def functional_from_function(cat: FinCategory, rig: RigDescriptor, values: Sequence) -> LinearFunctional:
    return LinearFunctional(cat, rig, tuple(values))


def function_from_functional(cat: FinCategory, rig: RigDescriptor,
                             functional: Callable[[AlgebraElement], Any]) -> tuple:
    """Values of any linear map on the indeterminates."""
    return tuple(functional(indeterminate(cat, rig, c)) for c in cat.arrows)


def is_unital(phi: LinearFunctional) -> bool:
    rig, cat = phi.rig, phi.category
    total = rig.sum(phi.phi_hat[cat.identity[x]] for x in cat.objects)
    return rig.eq(total, rig.one)


def state_gram(phi: LinearFunctional, dag: Dagger) -> DenseMatrix:
    """``K[c', c] = phi_hat(c'^dagger o c)`` when composable, zero otherwise."""
    cat, rig = phi.category, phi.rig
    n = cat.arrow_count
    rows = [[rig.zero] * n for _ in range(n)]
    for cp in cat.arrows:
        d = dag.map[cp]
        for c in cat.arrows:
            if cat.dom[d] == cat.cod[c]:
                rows[cp][c] = phi.phi_hat[cat.table[d][c]]
    return DenseMatrix.from_rows(rig, rows) if n else DenseMatrix(0, 0, rig, ())


@dataclass
class StateCertificate:
    functional: LinearFunctional
    dagger: Dagger
    gram: DenseMatrix
    is_state: bool
    reason: Optional[str] = None
    witness: Any = None
    min_eigenvalue: Optional[float] = None
    eigenvalues: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def verdict(self) -> str:
        return "state" if self.is_state else f"not_state({self.reason})"


def _exact_path(rig):
    return rig.exact and rig.is_ordered and rig.has_subtraction


def check_state(phi: LinearFunctional, dag: Dagger, psd_tol: float = 1e-9) -> StateCertificate:
    rig, cat = phi.rig, phi.category
    numeric = rig.name == "complex"
    if not (numeric or _exact_path(rig)):
        raise UnsupportedRig(f"no positivity decision for the {rig.name} rig")
    if not dag.category.same_as(cat) or not validate_dagger(cat, dag).ok:
        raise InvalidDagger("dagger is not valid for this category")
    gram = state_gram(phi, dag)
    cert = StateCertificate(phi, dag, gram, True)

    if not is_unital(phi):
        total = rig.sum(phi.phi_hat[cat.identity[x]] for x in cat.objects)
        cert.is_state, cert.reason, cert.witness = False, "not unital", total
        return cert
    for c in cat.arrows:
        if not rig.eq(phi.phi_hat[dag.map[c]], rig.star(phi.phi_hat[c])):
            cert.is_state, cert.reason, cert.witness = False, "not hermitian", cat.arrow_labels[c]
            return cert

    if numeric:
        if cat.arrow_count == 0:
            return cert
        eig = hermitian_eigen(gram)
        cert.eigenvalues = eig.values
        cert.min_eigenvalue = float(eig.values[0])
        scale = max(1.0, float(np.max(np.abs(eig.values))))
        if eig.values[0] < -psd_tol * scale:
            cert.is_state, cert.reason = False, "not positive semidefinite"
            cert.witness = tuple(complex(z) for z in eig.vectors[:, 0])
    else:
        verdict = psd_exact(gram)
        if not verdict.psd:
            cert.is_state, cert.reason, cert.witness = False, "not positive semidefinite", verdict.witness
    return cert


@dataclass(frozen=True, eq=False)
class NCProbabilitySpace:
    category: FinCategory
    rig: RigDescriptor
    dagger: Dagger
    state: LinearFunctional
    certificate: Optional[StateCertificate] = None


def probability_space(phi: LinearFunctional, dag: Dagger, psd_tol: float = 1e-9) -> NCProbabilitySpace:
    """Pair the algebra with ``phi`` after confirming that ``phi`` is a state.

    Rigs whose positive part is the whole carrier (natural, boolean,
    tropical) make the positivity condition vacuous; for them only unitality
    and hermitian symmetry are checked.
    """
    rig, cat = phi.rig, phi.category
    if rig.positive_is_whole and not (rig.name == "complex" or _exact_path(rig)):
        if not dag.category.same_as(cat) or not validate_dagger(cat, dag).ok:
            raise InvalidDagger("dagger is not valid for this category")
        if not is_unital(phi):
            raise NotAState("functional is not unital")
        for c in cat.arrows:
            if not rig.eq(phi.phi_hat[dag.map[c]], rig.star(phi.phi_hat[c])):
                raise NotAState(f"functional is not hermitian at {cat.arrow_labels[c]}")
        return NCProbabilitySpace(cat, rig, dag, phi, None)
    cert = check_state(phi, dag, psd_tol)
    if not cert.is_state:
        raise NotAState(f"functional is not a state: {cert.reason}", cert)
    return NCProbabilitySpace(cat, rig, dag, phi, cert)


def expectation(space: NCProbabilitySpace, factors: Sequence[AlgebraElement]):
    """State applied to the left-to-right product of ``factors``."""
    prod = unit(space.category, space.rig)
    for a in factors:
        prod = convolve(prod, a)
    return evaluate(space.state, prod)
