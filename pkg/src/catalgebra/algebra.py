"""The category algebra R[C] of a finite category over a rig.

Elements are dense coefficient vectors indexed by arrows; the product is the
convolution

    (a' a)(c'') = sum over c'' = c' o c of a'(c') a(c).
"""
from __future__ import annotations

import random
import weakref
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadArrow, InvalidDagger, Mismatch, NotIndiscrete, UnsupportedRig
from .fincat import Dagger, FinCategory, is_indiscrete
from .matrixkit import DenseMatrix
from .rigs import RigDescriptor


@dataclass(frozen=True)
class FactorizationTable:
    """``pairs[c]`` lists every ``(c', c0)`` with ``c = c' o c0``;
    ``by_left[c']`` lists every ``(c0, c' o c0)``."""

    pairs: tuple
    by_left: tuple = ()

    @property
    def pair_count(self) -> int:
        return sum(len(p) for p in self.pairs)


_factorization_cache: "weakref.WeakKeyDictionary[FinCategory, FactorizationTable]" = (
    weakref.WeakKeyDictionary())


def build_factorizations(cat: FinCategory) -> FactorizationTable:
    cached = _factorization_cache.get(cat)
    if cached is not None:
        return cached
    pairs = [[] for _ in cat.arrows]
    by_left = [[] for _ in cat.arrows]
    for g in cat.arrows:
        row = cat.table[g]
        for f in cat.arrows:
            if cat.dom[g] == cat.cod[f]:
                pairs[row[f]].append((g, f))
                by_left[g].append((f, row[f]))
    table = FactorizationTable(tuple(tuple(p) for p in pairs), tuple(tuple(p) for p in by_left))
    _factorization_cache[cat] = table
    return table


class AlgebraElement:
    """An element of R[C]; immutable, compared coefficientwise with the rig's ``eq``."""

    __slots__ = ("category", "rig", "coeffs")

    def __init__(self, category: FinCategory, rig: RigDescriptor, coeffs: Iterable):
        coeffs = tuple(coeffs)
        if len(coeffs) != category.arrow_count:
            raise Mismatch(f"expected {category.arrow_count} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "category", category)
        object.__setattr__(self, "rig", rig)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    def __getitem__(self, c: int):
        return self.coeffs[c]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.category.same_as(other.category) and self.rig is other.rig
                and all(self.rig.eq(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    __hash__ = None

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        return NotImplemented

    def __repr__(self):
        lab = self.category.arrow_labels
        terms = [f"{self.rig.format(v)}*{lab[c]}" for c, v in enumerate(self.coeffs)
                 if not self.rig.is_zero(v)]
        return f"<{' + '.join(terms) or '0'} in {self.rig.name}[{self.category.name or 'C'}]>"

    def support(self) -> list:
        return [c for c, v in enumerate(self.coeffs) if not self.rig.is_zero(v)]


def _check_same(a: AlgebraElement, b: AlgebraElement):
    if a.rig is not b.rig and a.rig.name != b.rig.name:
        raise Mismatch(f"rigs differ: {a.rig.name} vs {b.rig.name}")
    if not a.category.same_as(b.category):
        raise Mismatch("elements live on different categories")


def zero(cat: FinCategory, rig: RigDescriptor) -> AlgebraElement:
    return AlgebraElement(cat, rig, (rig.zero,) * cat.arrow_count)


def unit(cat: FinCategory, rig: RigDescriptor) -> AlgebraElement:
    return AlgebraElement(cat, rig, (rig.one if cat.is_identity(c) else rig.zero for c in cat.arrows))


def indeterminate(cat: FinCategory, rig: RigDescriptor, c: int) -> AlgebraElement:
    cat.check_arrow(c)
    return AlgebraElement(cat, rig, (rig.one if k == c else rig.zero for k in cat.arrows))


def element(cat: FinCategory, rig: RigDescriptor, coeffs: Sequence) -> AlgebraElement:
    """Element from a coefficient sequence; values that embed exactly (ints into
    the rationals, reals into the complex numbers, ...) are converted."""
    return AlgebraElement(cat, rig, tuple(_coerce(rig, v) for v in coeffs))


def _coerce(rig: RigDescriptor, v):
    if rig.contains(v):
        return v
    if not isinstance(v, bool):
        if rig.name == "rational" and isinstance(v, int):
            return Fraction(v)
        if rig.name == "complex" and isinstance(v, (int, float, Fraction)):
            return complex(v)
        if rig.name == "tropical" and isinstance(v, (int, Fraction)):
            return float(v)
    raise Mismatch(f"{v!r} is not an element of the {rig.name} rig")


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same(a, b)
    plus, nz = a.rig.add, a.rig.nonzero_test()
    return AlgebraElement(a.category, a.rig, (plus(x, y) if nz(x) and nz(y) else (y if nz(y) else x)
                                              for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: AlgebraElement) -> AlgebraElement:
    if a.rig.neg is None:
        raise UnsupportedRig(f"rig {a.rig.name} has no additive inverses")
    return AlgebraElement(a.category, a.rig, (a.rig.neg(x) for x in a.coeffs))


def sub(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return add(a, neg(b))


def scalar_left(r, a: AlgebraElement) -> AlgebraElement:
    mul = a.rig.mul
    return AlgebraElement(a.category, a.rig, (mul(r, x) for x in a.coeffs))


def scalar_right(a: AlgebraElement, r) -> AlgebraElement:
    mul = a.rig.mul
    return AlgebraElement(a.category, a.rig, (mul(x, r) for x in a.coeffs))


def convolve(a: AlgebraElement, b: AlgebraElement, table: FactorizationTable = None) -> AlgebraElement:
    _check_same(a, b)
    if table is None:
        table = build_factorizations(a.category)
    rig = a.rig
    plus, times, z = rig.add, rig.mul, rig.zero
    x, y = a.coeffs, b.coeffs
    out = [z] * len(x)
    # terms with an exactly-zero factor vanish by absorption
    nz = rig.nonzero_test()
    nz_y = [nz(v) for v in y]
    for g in [g for g, v in enumerate(x) if nz(v)]:
        xg = x[g]
        for f, h in table.by_left[g]:
            if nz_y[f]:
                out[h] = plus(out[h], times(xg, y[f]))
    return AlgebraElement(a.category, rig, out)


def power(a: AlgebraElement, k: int) -> AlgebraElement:
    result = unit(a.category, a.rig)
    for _ in range(k):
        result = convolve(result, a)
    return result


def left_mult_matrix(a: AlgebraElement) -> DenseMatrix:
    """Matrix of ``x -> a x`` acting on coefficient vectors.

    Entry ``[c'', c]`` is the sum of ``a(c')`` over ``c'`` with ``c' o c = c''``.
    """
    cat, rig = a.category, a.rig
    n = cat.arrow_count
    rows = [[rig.zero] * n for _ in range(n)]
    for h, pairs in enumerate(build_factorizations(cat).pairs):
        for g, f in pairs:
            rows[h][f] = rig.add(rows[h][f], a.coeffs[g])
    return DenseMatrix.from_rows(rig, rows) if n else DenseMatrix(0, 0, rig, ())


def right_mult_matrix(a: AlgebraElement) -> DenseMatrix:
    cat, rig = a.category, a.rig
    n = cat.arrow_count
    rows = [[rig.zero] * n for _ in range(n)]
    for h, pairs in enumerate(build_factorizations(cat).pairs):
        for g, f in pairs:
            rows[h][g] = rig.add(rows[h][g], a.coeffs[f])
    return DenseMatrix.from_rows(rig, rows) if n else DenseMatrix(0, 0, rig, ())


def _restrict(a: AlgebraElement, keep) -> AlgebraElement:
    z = a.rig.zero
    return AlgebraElement(a.category, a.rig, (v if keep(c) else z for c, v in enumerate(a.coeffs)))


def column(a: AlgebraElement, obj: int) -> AlgebraElement:
    """Restriction to arrows with domain ``obj``."""
    cat = a.category
    cat.check_object(obj)
    return _restrict(a, lambda c: cat.dom[c] == obj)


def row(a: AlgebraElement, obj: int) -> AlgebraElement:
    """Restriction to arrows with codomain ``obj``."""
    cat = a.category
    cat.check_object(obj)
    return _restrict(a, lambda c: cat.cod[c] == obj)


def entry(a: AlgebraElement, target: int, source: int) -> AlgebraElement:
    """Restriction to arrows ``source -> target``."""
    cat = a.category
    cat.check_object(target)
    cat.check_object(source)
    return _restrict(a, lambda c: cat.dom[c] == source and cat.cod[c] == target)


def from_polynomial(cat: FinCategory, rig: RigDescriptor, terms: Iterable) -> AlgebraElement:
    """Sum of ``r * iota^c`` over ``(r, c)`` in ``terms``."""
    coeffs = [rig.zero] * cat.arrow_count
    for r, c in terms:
        if not isinstance(c, int) or not 0 <= c < cat.arrow_count:
            raise BadArrow(f"no arrow {c!r}")
        coeffs[c] = rig.add(coeffs[c], r)
    return AlgebraElement(cat, rig, coeffs)


def polynomial_terms(a: AlgebraElement) -> list:
    """Read back ``a`` as ``[(a(c), c), ...]`` over its support."""
    return [(a.coeffs[c], c) for c in a.support()]


def star(a: AlgebraElement, dag: Dagger) -> AlgebraElement:
    if not dag.category.same_as(a.category):
        raise InvalidDagger("dagger belongs to a different category")
    conj = a.rig.star
    return AlgebraElement(a.category, a.rig, (conj(a.coeffs[dag.map[c]]) for c in a.category.arrows))


def to_matrix(a: AlgebraElement) -> DenseMatrix:
    """``M[i][j] = a(c_ij)`` where ``c_ij : j -> i``; indiscrete categories only."""
    cat = a.category
    if not is_indiscrete(cat):
        raise NotIndiscrete("matrix form exists only on indiscrete categories")
    n = cat.object_count
    rows = [[a.rig.zero] * n for _ in range(n)]
    for c in cat.arrows:
        rows[cat.cod[c]][cat.dom[c]] = a.coeffs[c]
    return DenseMatrix.from_rows(a.rig, rows) if n else DenseMatrix(0, 0, a.rig, ())


def from_matrix(cat: FinCategory, rig: RigDescriptor, M) -> AlgebraElement:
    if not is_indiscrete(cat):
        raise NotIndiscrete("matrix form exists only on indiscrete categories")
    rows = M.to_rows() if isinstance(M, DenseMatrix) else [list(r) for r in M]
    n = cat.object_count
    if len(rows) != n or any(len(r) != n for r in rows):
        raise Mismatch(f"expected a {n}x{n} matrix")
    return AlgebraElement(cat, rig, (rows[cat.cod[c]][cat.dom[c]] for c in cat.arrows))


def random_element(cat: FinCategory, rig: RigDescriptor, rng: random.Random,
                   density: float = 1.0) -> AlgebraElement:
    return AlgebraElement(cat, rig, (rig.sample(rng) if rng.random() < density else rig.zero
                                     for _ in cat.arrows))
