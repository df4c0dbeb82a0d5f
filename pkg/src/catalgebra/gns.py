"""GNS data of a state: semi-Hilbert module in the arrow basis and, over the
complex numbers, the quotient by the null space.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import algebra as alg
from .algebra import AlgebraElement
from .errors import Mismatch, NotPSD, UnsupportedRig
from .matrixkit import DenseMatrix, is_hermitian, mat_mul, mat_vec, null_space
from .states import NCProbabilitySpace, evaluate


@dataclass(frozen=True, eq=False)
class SemiHilbertGNS:
    space: NCProbabilitySpace
    gram: DenseMatrix
    cyclic: tuple
    rep: tuple  # rep[c] = left multiplication by iota^c

    @property
    def rig(self):
        return self.space.rig

    @property
    def category(self):
        return self.space.category

    @property
    def dim(self) -> int:
        return self.category.arrow_count


def build_semi_hilbert(space: NCProbabilitySpace) -> SemiHilbertGNS:
    cat, rig, dag, phi = space.category, space.rig, space.dagger, space.state
    iotas = [alg.indeterminate(cat, rig, c) for c in cat.arrows]
    stars = [alg.star(i, dag) for i in iotas]
    n = cat.arrow_count
    gram = [[evaluate(phi, alg.convolve(stars[cp], iotas[c])) for c in range(n)] for cp in range(n)]
    gram = DenseMatrix.from_rows(rig, gram) if n else DenseMatrix(0, 0, rig, ())
    rep = tuple(alg.left_mult_matrix(i) for i in iotas)
    cyclic = alg.unit(cat, rig).coeffs
    return SemiHilbertGNS(space, gram, cyclic, rep)


def pairing(g: SemiHilbertGNS, v: Sequence, w: Sequence):
    """``<v|w> = sum conj(v_i) G_ij w_j``, conjugate-linear in the left slot."""
    if len(v) != g.dim or len(w) != g.dim:
        raise Mismatch(f"vectors must have length {g.dim}")
    rig = g.rig
    Gw = mat_vec(g.gram, list(w))
    return rig.sum(rig.mul(rig.star(x), y) for x, y in zip(v, Gw))


def represent(g: SemiHilbertGNS, a: AlgebraElement) -> DenseMatrix:
    if not a.category.same_as(g.category):
        raise Mismatch("element does not belong to this algebra")
    rig = g.rig
    n = g.dim
    nz = rig.nonzero_test()
    acc = [rig.zero] * (n * n)
    for c, coeff in enumerate(a.coeffs):
        if not nz(coeff):
            continue
        for k, y in enumerate(g.rep[c].data):
            if nz(y):
                acc[k] = rig.add(acc[k], rig.mul(coeff, y))
    return DenseMatrix(n, n, rig, tuple(acc))


# ---------------------------------------------------------------------------
# verification


@dataclass
class CheckResult:
    name: str
    trials: int
    max_residual: float
    passed: bool


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.max_residual for c in self.checks), default=0.0)

    def get(self, name) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def __str__(self):
        return "\n".join(f"  {c.name:<28s} trials={c.trials:<4d} max_residual={c.max_residual:.3e} "
                         f"{'pass' if c.passed else 'FAIL'}" for c in self.checks)


class _Tracker:
    def __init__(self, rig, tol):
        self.rig, self.tol = rig, tol
        self.worst, self.failed, self.trials = 0.0, False, 0

    def compare(self, x, y):
        d = self.rig.distance(x, y)
        self.worst = max(self.worst, d)
        if self.rig.exact:
            self.failed |= not self.rig.eq(x, y)
        else:
            self.failed |= not d <= self.tol

    def result(self, name):
        return CheckResult(name, self.trials, self.worst, not self.failed)


def _random_vector(g, rng):
    return [g.rig.sample(rng) for _ in range(g.dim)]


def verify_gns(g: SemiHilbertGNS, trials: int = 100, tol: float = 1e-9,
               rng: Optional[random.Random] = None) -> VerificationReport:
    """Randomised check of the GNS identities on the arrow-basis data.

    Exact rigs must match exactly; the complex rig within ``tol`` (scaled by
    the magnitude of the compared values).
    """
    rng = rng or random.Random(0)
    rig, cat, dag = g.rig, g.category, g.space.dagger
    phi = g.space.state
    report = VerificationReport()

    def tracker():
        return _Tracker(rig, tol)

    t = tracker()
    t.trials = 1
    t.compare(pairing(g, g.cyclic, g.cyclic), rig.one)
    report.checks.append(t.result("cyclic vector normalized"))

    t = tracker()
    t.trials = 1
    for i in range(g.dim):
        for j in range(g.dim):
            t.compare(g.gram[i, j], rig.star(g.gram[j, i]))
    report.checks.append(t.result("gram hermitian"))

    t = tracker()
    t.trials = 1
    ident = represent(g, alg.unit(cat, rig))
    for x, y in zip(ident.data, DenseMatrix.identity(rig, g.dim).data):
        t.compare(x, y)
    report.checks.append(t.result("unit represented by identity"))

    recon, adjoint, hom = tracker(), tracker(), tracker()
    for _ in range(trials):
        a = alg.random_element(cat, rig, rng)
        b = alg.random_element(cat, rig, rng)
        v, vp = _random_vector(g, rng), _random_vector(g, rng)
        pa = represent(g, a)
        recon.compare(evaluate(phi, a), pairing(g, g.cyclic, mat_vec(pa, list(g.cyclic))))
        pas = represent(g, alg.star(a, dag))
        adjoint.compare(pairing(g, vp, mat_vec(pa, v)), pairing(g, mat_vec(pas, vp), v))
        lhs = represent(g, alg.convolve(a, b))
        rhs = mat_mul(pa, represent(g, b))
        for x, y in zip(lhs.data, rhs.data):
            hom.compare(x, y)
        for tr in (recon, adjoint, hom):
            tr.trials += 1
    report.checks.append(recon.result("reconstruction"))
    report.checks.append(adjoint.result("adjoint relation"))
    report.checks.append(hom.result("homomorphism"))
    return report


# ---------------------------------------------------------------------------
# complex quotient


@dataclass(frozen=True, eq=False)
class PreHilbertGNS:
    ambient: SemiHilbertGNS
    quotient_dim: int
    basis: np.ndarray          # columns; U^dagger G U = I
    kernel: np.ndarray         # orthonormal (Euclidean) kernel basis
    rep_q: tuple               # quotient_dim x quotient_dim arrays
    cyclic_q: np.ndarray
    gram_spectrum: np.ndarray
    kernel_invariance: float   # max squared gram-norm of rep(c) k over kernel vectors k

    def coords(self, v) -> np.ndarray:
        """Quotient coordinates of the class of the arrow-space vector ``v``."""
        G = self.ambient.gram.to_numpy()
        return self.basis.conj().T @ G @ np.asarray(v, dtype=complex)

    def represent(self, a: AlgebraElement) -> np.ndarray:
        out = np.zeros((self.quotient_dim, self.quotient_dim), dtype=complex)
        for c, coeff in enumerate(a.coeffs):
            out += complex(coeff) * self.rep_q[c]
        return out


def build_pre_hilbert(g: SemiHilbertGNS, tol: float = 1e-9) -> PreHilbertGNS:
    if g.rig.name != "complex":
        raise UnsupportedRig("the null-space quotient is built over the complex numbers only")
    G = g.gram.to_numpy()
    ns = null_space(G, tol)
    U = ns.complement / np.sqrt(ns.complement_values)
    UhG = U.conj().T @ G
    reps = [r.to_numpy() for r in g.rep]
    rep_q = tuple(UhG @ R @ U for R in reps)
    cyclic_q = UhG @ np.asarray(g.cyclic, dtype=complex)

    worst = 0.0
    for R in reps:
        moved = R @ ns.kernel
        if moved.size:
            vals = np.einsum("ik,ij,jk->k", moved.conj(), G, moved)
            worst = max(worst, float(np.max(np.abs(vals))))
    scale = max(1.0, float(np.max(np.abs(ns.eigen.values)))) if g.dim else 1.0
    if worst > tol * scale:
        raise NotPSD(f"null space is not invariant (residual {worst:.3e}); gram is not a state's")
    return PreHilbertGNS(g, U.shape[1], U, ns.kernel, rep_q, cyclic_q, ns.eigen.values, worst)


def verify_star_representation(p: PreHilbertGNS, trials: int = 100, tol: float = 1e-8,
                               rng: Optional[random.Random] = None,
                               cs_trials: int = 500) -> VerificationReport:
    rng = rng or random.Random(0)
    g = p.ambient
    cat, rig, dag, phi = g.category, g.rig, g.space.dagger, g.space.state
    G = g.gram.to_numpy()
    report = VerificationReport()

    def check(name, residuals, n, bound):
        worst = float(max(residuals, default=0.0))
        report.checks.append(CheckResult(name, n, worst, bool(worst <= bound)))

    U = p.basis
    check("orthonormal basis", [float(np.max(np.abs(U.conj().T @ G @ U - np.eye(p.quotient_dim))))
                                if p.quotient_dim else 0.0], 1, tol)
    check("cyclic vector normalized", [abs(np.vdot(p.cyclic_q, p.cyclic_q) - 1)], 1, tol)
    check("kernel invariance", [p.kernel_invariance], 1, tol)

    adj, recon, hom = [], [], []
    for _ in range(trials):
        a = alg.random_element(cat, rig, rng)
        b = alg.random_element(cat, rig, rng)
        ra = p.represent(a)
        scale = max(1.0, float(np.max(np.abs(ra)))) if ra.size else 1.0
        adj.append(float(np.max(np.abs(p.represent(alg.star(a, dag)) - ra.conj().T), initial=0.0)) / scale)
        expected = complex(evaluate(phi, a))
        got = np.vdot(p.cyclic_q, ra @ p.cyclic_q)
        recon.append(abs(expected - got) / max(1.0, abs(expected)))
        rb = p.represent(b)
        rab = p.represent(alg.convolve(a, b))
        hom.append(float(np.max(np.abs(rab - ra @ rb), initial=0.0)) / max(1.0, float(np.max(np.abs(rab), initial=0.0))))
    check("star representation", adj, trials, tol)
    check("reconstruction", recon, trials, tol)
    check("homomorphism", hom, trials, tol)

    cs = []
    for _ in range(cs_trials):
        u = np.array(_random_vector(g, rng))
        v = np.array(_random_vector(g, rng))
        # classes represented by arrow-space vectors, paired through the gram form
        lhs = abs(np.vdot(u, G @ v)) ** 2
        rhs = np.vdot(u, G @ u).real * np.vdot(v, G @ v).real
        # residual > 0 only when the inequality is violated
        cs.append(max(0.0, (lhs - rhs) / max(1.0, rhs)))
    check("Cauchy-Schwarz", cs, cs_trials, tol)
    return report
