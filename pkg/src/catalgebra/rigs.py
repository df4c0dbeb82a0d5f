"""Rigs with involution and positivity, plus the built-in instances.

A rig is described by a :class:`RigDescriptor` bundling its operations as
plain callables.  Values are ordinary Python objects:

=========  ==============================
rational   :class:`fractions.Fraction`
integer    ``int``
natural    ``int`` (non-negative)
boolean    ``bool``
complex    ``complex`` (floating)
tropical   ``float`` with ``math.inf`` as zero
=========  ==============================
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional

from .errors import BadLiteral, UnknownRig

COMPLEX_TOL = 1e-12

RIG_NAMES = ("rational", "complex", "integer", "natural", "boolean", "tropical")


@dataclass(frozen=True)
class RigDescriptor:
    name: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    star: Callable[[Any], Any]
    is_positive: Callable[[Any], bool]
    eq: Callable[[Any, Any], bool]
    contains: Callable[[Any], bool]
    sample: Callable[[random.Random], Any]
    distance: Callable[[Any, Any], float]
    parse: Callable[[Any], Any]
    format: Callable[[Any], Any]
    is_central: Callable[[Any], bool] = field(default=lambda r: True)
    neg: Optional[Callable[[Any], Any]] = None
    inv: Optional[Callable[[Any], Any]] = None
    is_commutative: bool = True
    has_subtraction: bool = False
    is_field: bool = False
    is_ordered: bool = False
    exact: bool = True
    # R+ equal to the whole carrier makes every positivity condition vacuous
    positive_is_whole: bool = False

    def __repr__(self):
        return f"RigDescriptor({self.name!r})"

    def sum(self, values: Iterable) -> Any:
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def product(self, values: Iterable) -> Any:
        total = self.one
        for v in values:
            total = self.mul(total, v)
        return total

    def sub(self, a, b):
        if self.neg is None:
            raise TypeError(f"rig {self.name!r} has no subtraction")
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def nonzero_test(self) -> Callable[[Any], bool]:
        """Fast predicate for "not exactly zero", used to skip absorbed terms.

        Unlike ``is_zero`` it ignores tolerances, so skipping is always exact.
        """
        z = self.zero
        if not z:
            return bool
        return lambda a: a != z

    def from_int(self, n: int):
        """Image of the integer ``n`` (``n >= 0`` unless the rig has negatives)."""
        if n < 0:
            return self.neg(self.from_int(-n))
        total = self.zero
        for _ in range(n):
            total = self.add(total, self.one)
        return total


# ---------------------------------------------------------------------------
# helpers for literal parsing


def _parse_fraction(lit, path=""):
    if isinstance(lit, bool):
        raise BadLiteral(f"expected a rational literal, got {lit!r}", path)
    if isinstance(lit, int):
        return Fraction(lit)
    if isinstance(lit, str):
        try:
            return Fraction(lit.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise BadLiteral(f"expected a rational literal like \"p/q\", got {lit!r}", path)


def _format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_int(lit, path=""):
    if isinstance(lit, bool):
        raise BadLiteral(f"expected an integer literal, got {lit!r}", path)
    if isinstance(lit, int):
        return lit
    if isinstance(lit, str):
        try:
            return int(lit.strip())
        except ValueError:
            pass
    raise BadLiteral(f"expected an integer literal, got {lit!r}", path)


def _parse_natural(lit, path=""):
    n = _parse_int(lit, path)
    if n < 0:
        raise BadLiteral(f"natural numbers are non-negative, got {lit!r}", path)
    return n


def _parse_bool(lit, path=""):
    if isinstance(lit, bool):
        return lit
    if lit in ("true", "false"):
        return lit == "true"
    if lit in (0, 1) and not isinstance(lit, float):
        return bool(lit)
    raise BadLiteral(f"expected true/false, got {lit!r}", path)


def _parse_complex(lit, path=""):
    if isinstance(lit, (list, tuple)) and len(lit) == 2:
        re_, im_ = lit
        if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re_, im_)):
            return complex(float(re_), float(im_))
    if isinstance(lit, (int, float)) and not isinstance(lit, bool):
        return complex(float(lit), 0.0)
    raise BadLiteral(f"expected a complex literal [re, im], got {lit!r}", path)


def _parse_tropical(lit, path=""):
    if isinstance(lit, str) and lit.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    if isinstance(lit, (int, float)) and not isinstance(lit, bool):
        x = float(lit)
        if not math.isnan(x) and x != -math.inf:
            return x
    raise BadLiteral(f"expected a real number or \"inf\", got {lit!r}", path)


def _format_tropical(x):
    return "inf" if x == math.inf else float(x)


def _complex_eq(a, b, tol=COMPLEX_TOL):
    a, b = complex(a), complex(b)
    return abs(a.real - b.real) <= tol and abs(a.imag - b.imag) <= tol


def _trop_add(a, b):
    return a if a <= b else b


def _trop_mul(a, b):
    if a == math.inf or b == math.inf:
        return math.inf
    return a + b


def _trop_distance(a, b):
    if a == b:
        return 0.0
    if math.inf in (a, b):
        return math.inf
    return abs(a - b)


def _trop_sample(rng):
    if rng.random() < 0.1:
        return math.inf
    return float(rng.randint(-20, 20))


def _rational_sample(rng):
    return Fraction(rng.randint(-20, 20), rng.randint(1, 12))


def _complex_sample(rng):
    return complex(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0))


def _ident(x):
    return x


RATIONAL = RigDescriptor(
    name="rational",
    zero=Fraction(0),
    one=Fraction(1),
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    star=_ident,
    is_positive=lambda a: a >= 0,
    eq=lambda a, b: a == b,
    contains=lambda a: isinstance(a, Fraction),
    sample=_rational_sample,
    distance=lambda a, b: float(abs(a - b)),
    parse=_parse_fraction,
    format=_format_fraction,
    neg=lambda a: -a,
    inv=lambda a: 1 / Fraction(a),
    has_subtraction=True,
    is_field=True,
    is_ordered=True,
)

INTEGER = RigDescriptor(
    name="integer",
    zero=0,
    one=1,
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    star=_ident,
    is_positive=lambda a: a >= 0,
    eq=lambda a, b: a == b,
    contains=lambda a: isinstance(a, int) and not isinstance(a, bool),
    sample=lambda rng: rng.randint(-50, 50),
    distance=lambda a, b: float(abs(a - b)),
    parse=_parse_int,
    format=str,
    neg=lambda a: -a,
    has_subtraction=True,
    is_ordered=True,
)

NATURAL = RigDescriptor(
    name="natural",
    zero=0,
    one=1,
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    star=_ident,
    is_positive=lambda a: a >= 0,
    eq=lambda a, b: a == b,
    contains=lambda a: isinstance(a, int) and not isinstance(a, bool) and a >= 0,
    sample=lambda rng: rng.randint(0, 50),
    distance=lambda a, b: float(abs(a - b)),
    parse=_parse_natural,
    format=str,
    is_ordered=True,
    positive_is_whole=True,
)

BOOLEAN = RigDescriptor(
    name="boolean",
    zero=False,
    one=True,
    add=lambda a, b: a or b,
    mul=lambda a, b: a and b,
    star=_ident,
    is_positive=lambda a: isinstance(a, bool),
    eq=lambda a, b: a == b,
    contains=lambda a: isinstance(a, bool),
    sample=lambda rng: rng.random() < 0.5,
    distance=lambda a, b: 0.0 if a == b else 1.0,
    parse=_parse_bool,
    format=bool,
    positive_is_whole=True,
)

COMPLEX = RigDescriptor(
    name="complex",
    zero=0j,
    one=1 + 0j,
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    star=lambda a: complex(a).conjugate(),
    is_positive=lambda a: complex(a).real >= -COMPLEX_TOL and abs(complex(a).imag) <= COMPLEX_TOL,
    eq=_complex_eq,
    contains=lambda a: isinstance(a, complex),
    sample=_complex_sample,
    distance=lambda a, b: abs(complex(a) - complex(b)),
    parse=_parse_complex,
    format=lambda z: [complex(z).real, complex(z).imag],
    neg=lambda a: -a,
    inv=lambda a: 1 / a,
    has_subtraction=True,
    is_field=True,
    exact=False,
)

TROPICAL = RigDescriptor(
    name="tropical",
    zero=math.inf,
    one=0.0,
    add=_trop_add,
    mul=_trop_mul,
    star=_ident,
    is_positive=lambda a: isinstance(a, float) and not math.isnan(a) and a != -math.inf,
    eq=lambda a, b: a == b,
    contains=lambda a: isinstance(a, float) and not math.isnan(a) and a != -math.inf,
    sample=_trop_sample,
    distance=_trop_distance,
    parse=_parse_tropical,
    format=_format_tropical,
    positive_is_whole=True,
)

_BUILTINS = {
    "rational": RATIONAL,
    "complex": COMPLEX,
    "integer": INTEGER,
    "natural": NATURAL,
    "boolean": BOOLEAN,
    "tropical": TROPICAL,
    "tropical_min_plus": TROPICAL,
}


def builtin_rig(kind: str) -> RigDescriptor:
    try:
        return _BUILTINS[kind]
    except KeyError:
        raise UnknownRig(f"unknown rig {kind!r}; expected one of {', '.join(RIG_NAMES)}") from None


def complex_rig(tol: float) -> RigDescriptor:
    """The complex rig with a non-default equality tolerance."""
    import dataclasses

    return dataclasses.replace(
        COMPLEX,
        eq=lambda a, b: _complex_eq(a, b, tol),
        is_positive=lambda a: complex(a).real >= -tol and abs(complex(a).imag) <= tol,
    )


# ---------------------------------------------------------------------------
# law checks

LAW_NAMES = (
    "additive associativity",
    "additive commutativity and unit",
    "multiplicative associativity and unit",
    "distributivity",
    "absorption",
    "involution: involutive and additive",
    "involution: reverses products",
    "positivity",
)


@dataclass
class LawResult:
    law: str
    passed: bool
    counterexample: Optional[tuple] = None


@dataclass
class LawReport:
    rig: str
    samples: int
    results: list

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def __str__(self):
        lines = [f"rig {self.rig}: {self.samples} sampled triples"]
        for r in self.results:
            mark = "pass" if r.passed else f"FAIL  witness={r.counterexample!r}"
            lines.append(f"  {r.law:<40s} {mark}")
        return "\n".join(lines)


def _law_checks(rig: RigDescriptor, a, b, c):
    add, mul, star, eq = rig.add, rig.mul, rig.star, rig.eq
    z, o = rig.zero, rig.one
    pos = rig.is_positive
    yield eq(add(add(a, b), c), add(a, add(b, c)))
    yield eq(add(a, b), add(b, a)) and eq(add(a, z), a) and eq(add(z, a), a)
    yield eq(mul(mul(a, b), c), mul(a, mul(b, c))) and eq(mul(a, o), a) and eq(mul(o, a), a)
    yield (eq(mul(c, add(b, a)), add(mul(c, b), mul(c, a)))
           and eq(mul(add(c, b), a), add(mul(c, a), mul(b, a))))
    yield eq(mul(z, a), z) and eq(mul(a, z), z)
    yield eq(star(star(a)), a) and eq(star(add(a, b)), add(star(a), star(b)))
    yield eq(star(mul(a, b)), mul(star(b), star(a)))
    positive = pos(mul(star(a), a))
    # R+ must be a subrig; zero-sum-free on positive pairs
    if pos(a) and pos(b):
        positive = positive and pos(add(a, b)) and pos(mul(a, b))
        if eq(add(a, b), z):
            positive = positive and eq(a, z) and eq(b, z)
    yield positive and pos(z) and pos(o)


def check_rig_laws(rig: RigDescriptor, samples) -> LawReport:
    """Evaluate every law on each sampled triple; failures carry a witness."""
    samples = list(samples)
    witnesses = [None] * len(LAW_NAMES)
    for triple in samples:
        for k, ok in enumerate(_law_checks(rig, *triple)):
            if not ok and witnesses[k] is None:
                witnesses[k] = tuple(triple)
    results = [LawResult(name, w is None, w) for name, w in zip(LAW_NAMES, witnesses)]
    return LawReport(rig.name, len(samples), results)


def sample_triples(rig: RigDescriptor, n: int, rng: random.Random) -> list:
    special = [rig.zero, rig.one]
    out = []
    for i in range(n):
        if i < 8:
            # exhaust combinations of zero and one first
            out.append(tuple(special[(i >> k) & 1] for k in range(3)))
        else:
            out.append((rig.sample(rng), rig.sample(rng), rig.sample(rng)))
    return out
