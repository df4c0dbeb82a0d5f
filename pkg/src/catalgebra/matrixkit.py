"""Small dense matrices over a rig.

Exact work (products, elimination, the PSD decision over the rationals) runs
on Python values; the Hermitian eigensolver works on ``numpy`` arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from .errors import (
    NoConvergence,
    NotHermitian,
    NotPSD,
    NotSymmetric,
    ShapeMismatch,
    SingularMatrix,
    UnsupportedRig,
)
from .rigs import COMPLEX, RigDescriptor


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    rows: int
    cols: int
    rig: RigDescriptor
    data: tuple  # row-major

    @classmethod
    def from_rows(cls, rig: RigDescriptor, rows: Sequence[Sequence[Any]]) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(n, m, rig, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rig, rows, cols) -> "DenseMatrix":
        return cls(rows, cols, rig, (rig.zero,) * (rows * cols))

    @classmethod
    def identity(cls, rig, n) -> "DenseMatrix":
        return cls(n, n, rig, tuple(rig.one if i == j else rig.zero
                                    for i in range(n) for j in range(n)))

    @classmethod
    def from_numpy(cls, arr, rig=COMPLEX) -> "DenseMatrix":
        arr = np.atleast_2d(np.asarray(arr, dtype=complex))
        return cls(arr.shape[0], arr.shape[1], rig, tuple(complex(x) for x in arr.ravel()))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.data[i * c:(i + 1) * c]) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(x) for x in self.data], dtype=complex).reshape(self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and all(self.rig.eq(a, b) for a, b in zip(self.data, other.data)))

    __hash__ = None

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols} over {self.rig.name}, {self.to_rows()!r})"


def mat_mul(A: DenseMatrix, B: DenseMatrix) -> DenseMatrix:
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    rig = A.rig
    add, mul, nz = rig.add, rig.mul, rig.nonzero_test()
    n, k, m = A.rows, A.cols, B.cols
    out = [rig.zero] * (n * m)
    bdata = B.data
    for i in range(n):
        for t in range(k):
            a = A.data[i * k + t]
            if not nz(a):
                continue
            for j in range(m):
                b = bdata[t * m + j]
                if nz(b):
                    out[i * m + j] = add(out[i * m + j], mul(a, b))
    return DenseMatrix(n, m, rig, tuple(out))


def mat_vec(A: DenseMatrix, v: Sequence) -> list:
    if A.cols != len(v):
        raise ShapeMismatch(f"cannot apply {A.rows}x{A.cols} to a vector of length {len(v)}")
    rig = A.rig
    nz = rig.nonzero_test()
    live = [t for t in range(A.cols) if nz(v[t])]
    out = []
    for i in range(A.rows):
        acc = rig.zero
        base = i * A.cols
        for t in live:
            a = A.data[base + t]
            if nz(a):
                acc = rig.add(acc, rig.mul(a, v[t]))
        out.append(acc)
    return out


def mat_add(A: DenseMatrix, B: DenseMatrix) -> DenseMatrix:
    if (A.rows, A.cols) != (B.rows, B.cols):
        raise ShapeMismatch("shapes differ")
    return DenseMatrix(A.rows, A.cols, A.rig, tuple(A.rig.add(a, b) for a, b in zip(A.data, B.data)))


def mat_scale(r, A: DenseMatrix) -> DenseMatrix:
    return DenseMatrix(A.rows, A.cols, A.rig, tuple(A.rig.mul(r, a) for a in A.data))


def conj_transpose(A: DenseMatrix) -> DenseMatrix:
    star = A.rig.star
    return DenseMatrix(A.cols, A.rows, A.rig,
                       tuple(star(A[i, j]) for j in range(A.cols) for i in range(A.rows)))


def is_hermitian(A: DenseMatrix) -> bool:
    if A.rows != A.cols:
        return False
    eq, star = A.rig.eq, A.rig.star
    return all(eq(A[i, j], star(A[j, i])) for i in range(A.rows) for j in range(i, A.rows))


# ---------------------------------------------------------------------------
# exact PSD decision


@dataclass
class PsdVerdict:
    psd: bool
    witness: Optional[tuple] = None
    value: Any = None  # quadratic form at the witness

    def __bool__(self):
        return self.psd


def quadratic_form(A: DenseMatrix, x: Sequence):
    """``x^dagger A x`` in rig arithmetic."""
    rig = A.rig
    Ax = mat_vec(A, x)
    return rig.sum(rig.mul(rig.star(xi), yi) for xi, yi in zip(x, Ax))


def psd_exact(A: DenseMatrix) -> PsdVerdict:
    """Decide positive semidefiniteness over an ordered exact rig.

    Symmetric elimination with a zero pivot test; on failure the returned
    witness ``x`` satisfies ``x^T A x < 0`` exactly.
    """
    rig = A.rig
    if not (rig.is_ordered and rig.has_subtraction and rig.exact):
        raise UnsupportedRig(f"exact PSD test needs an ordered exact rig with subtraction, not {rig.name}")
    if A.rows != A.cols:
        raise NotSymmetric("matrix is not square")
    n = A.rows
    M = [[Fraction(x) for x in row] for row in A.to_rows()]
    if any(M[i][j] != M[j][i] for i in range(n) for j in range(i)):
        raise NotSymmetric("matrix is not symmetric")

    # lifts[k] turns a vector on the surviving indices into one on all indices
    active = list(range(n))
    lifts = []
    while active:
        k = active[0]
        rest = active[1:]
        d = M[k][k]
        if d < 0:
            x = {k: Fraction(1)}
            return _finish_witness(A, x, lifts, n)
        if d == 0:
            j = next((j for j in rest if M[k][j] != 0), None)
            if j is not None:
                # (t e_k + e_j)^T M (t e_k + e_j) = M_jj + 2 t M_kj
                t = -(M[j][j] + 1) / (2 * M[k][j])
                x = {k: t, j: Fraction(1)}
                return _finish_witness(A, x, lifts, n)
            lifts.append((k, None, rest))
            active = rest
            continue
        row = {j: M[k][j] for j in rest}
        for i in rest:
            for j in rest:
                M[i][j] -= M[i][k] * M[k][j] / d
        lifts.append((k, (d, row), rest))
        active = rest
    return PsdVerdict(True)


def _finish_witness(A, x, lifts, n):
    for k, piv, rest in reversed(lifts):
        if piv is None:
            x.setdefault(k, Fraction(0))
        else:
            d, row = piv
            x[k] = -sum(row[j] * x.get(j, 0) for j in rest) / d
    vec = [Fraction(x.get(i, 0)) for i in range(n)]
    exact = DenseMatrix(A.rows, A.cols, A.rig, tuple(Fraction(v) for v in A.data))
    value = quadratic_form(exact, vec)
    assert value < 0, "elimination produced a non-negative witness"
    return PsdVerdict(False, tuple(vec), value)


# ---------------------------------------------------------------------------
# Hermitian eigenproblem (cyclic Jacobi)


@dataclass
class Eigen:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # columns
    sweeps: int


def _as_array(A) -> np.ndarray:
    if isinstance(A, DenseMatrix):
        return A.to_numpy()
    return np.array(A, dtype=complex)


def hermitian_eigen(A, tol: float = 1e-12, max_sweeps: int = 100, check_tol: float = 1e-9) -> Eigen:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps continue until every off-diagonal magnitude is below
    ``tol * max(1, max|A|)``.
    """
    a = _as_array(A)
    n = a.shape[0]
    if a.shape != (n, n):
        raise NotHermitian("matrix is not square")
    scale = max(1.0, float(np.max(np.abs(a)))) if n else 1.0
    if n and np.max(np.abs(a - a.conj().T)) > check_tol * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    a = (a + a.conj().T) / 2
    v = np.eye(n, dtype=complex)
    threshold = tol * scale
    sweeps = 0
    while True:
        off = np.abs(a - np.diag(np.diag(a)))
        if n < 2 or off.max() < threshold:
            break
        if sweeps >= max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < threshold * 1e-3:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
                c = 1 / np.sqrt(1 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0
                v[:, idx] = v[:, idx] @ g
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return Eigen(w[order], v[:, order], sweeps)


@dataclass
class NullSpace:
    kernel: np.ndarray  # orthonormal columns
    complement: np.ndarray  # orthonormal columns
    complement_values: np.ndarray
    eigen: Eigen


def null_space(A, tol: float = 1e-9) -> NullSpace:
    """Kernel of a Hermitian PSD matrix, with an eigenbasis of its complement.

    Eigenvalues at most ``tol * max(1, largest eigenvalue)`` count as zero.
    """
    eig = hermitian_eigen(A)
    a = _as_array(A)
    n = a.shape[0]
    top = float(eig.values[-1]) if n else 0.0
    cut = tol * max(1.0, top)
    if n and eig.values[0] < -cut:
        raise NotPSD(f"matrix has eigenvalue {eig.values[0]:.3e} < 0")
    zero = eig.values <= cut
    return NullSpace(eig.vectors[:, zero], eig.vectors[:, ~zero], eig.values[~zero], eig)


# ---------------------------------------------------------------------------
# linear solve


def solve(A: DenseMatrix, b: Sequence) -> list:
    """Solve ``A x = b`` by Gaussian elimination; exact over exact fields.

    Floating rigs use partial pivoting and treat pivots below ``1e-12`` times
    the matrix scale as zero.
    """
    rig = A.rig
    if not rig.is_field:
        raise UnsupportedRig(f"linear solve needs a field, not {rig.name}")
    n = A.rows
    if A.cols != n or len(b) != n:
        raise ShapeMismatch("solve needs a square system")
    M = [row + [bi] for row, bi in zip(A.to_rows(), b)]
    if rig.exact:
        def pick(col, start):
            return next((r for r in range(start, n) if M[r][col] != 0), None)
    else:
        scale = max([abs(x) for x in A.data] + [1.0])

        def pick(col, start):
            r = max(range(start, n), key=lambda r: abs(M[r][col]), default=None)
            if r is None or abs(M[r][col]) <= 1e-12 * scale:
                return None
            return r
    for col in range(n):
        r = pick(col, col)
        if r is None:
            raise SingularMatrix(f"singular system (no pivot in column {col})")
        M[col], M[r] = M[r], M[col]
        inv = rig.inv(M[col][col])
        M[col] = [rig.mul(inv, x) for x in M[col]]
        for r2 in range(n):
            if r2 != col and not rig.is_zero(M[r2][col]):
                f = M[r2][col]
                M[r2] = [rig.sub(x, rig.mul(f, y)) for x, y in zip(M[r2], M[col])]
    return [M[i][n] for i in range(n)]
