"""Finite small categories given by explicit composition tables.

Arrows are the integers ``0 .. arrow_count - 1``.  ``table[g][f]`` holds the
index of ``g o f`` (first ``f``, then ``g``) when ``dom(g) == cod(f)`` and
``NONE`` otherwise.
"""
from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    BadArrow,
    BadObject,
    CyclicQuiver,
    InvalidDagger,
    NoInverse,
    NotAMonoid,
    NotAPoset,
    NotComposable,
    NotIndiscrete,
)

NONE = -1


@dataclass(frozen=True, eq=False)
class FinCategory:
    object_labels: tuple
    arrow_labels: tuple
    dom: tuple
    cod: tuple
    identity: tuple
    table: tuple
    name: str = ""

    @property
    def object_count(self) -> int:
        return len(self.object_labels)

    @property
    def arrow_count(self) -> int:
        return len(self.arrow_labels)

    @property
    def objects(self) -> range:
        return range(self.object_count)

    @property
    def arrows(self) -> range:
        return range(self.arrow_count)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<FinCategory{tag}: {self.object_count} objects, {self.arrow_count} arrows>"

    def check_arrow(self, c: int) -> int:
        if not isinstance(c, int) or not 0 <= c < self.arrow_count:
            raise BadArrow(f"no arrow {c!r} in {self!r}")
        return c

    def check_object(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < self.object_count:
            raise BadObject(f"no object {x!r} in {self!r}")
        return x

    def composable(self, g: int, f: int) -> bool:
        return self.dom[g] == self.cod[f]

    def compose(self, g: int, f: int) -> int:
        """``g o f``; raises :class:`NotComposable` unless ``dom(g) == cod(f)``."""
        self.check_arrow(g)
        self.check_arrow(f)
        if self.dom[g] != self.cod[f]:
            raise NotComposable(
                f"cannot compose {self.arrow_labels[g]} after {self.arrow_labels[f]}")
        return self.table[g][f]

    def is_identity(self, c: int) -> bool:
        return self.identity[self.dom[c]] == c

    def hom(self, src: int, dst: int) -> list:
        return [c for c in self.arrows if self.dom[c] == src and self.cod[c] == dst]

    def arrows_from(self, src: int) -> list:
        return [c for c in self.arrows if self.dom[c] == src]

    def arrows_into(self, dst: int) -> list:
        return [c for c in self.arrows if self.cod[c] == dst]

    def arrow_index(self, label: str) -> int:
        try:
            return self.arrow_labels.index(label)
        except ValueError:
            raise BadArrow(f"no arrow labelled {label!r}") from None

    def object_index(self, label: str) -> int:
        try:
            return self.object_labels.index(label)
        except ValueError:
            raise BadObject(f"no object labelled {label!r}") from None

    def same_as(self, other: "FinCategory") -> bool:
        if self is other:
            return True
        return (isinstance(other, FinCategory)
                and self.dom == other.dom and self.cod == other.cod
                and self.identity == other.identity and self.table == other.table)


# ---------------------------------------------------------------------------
# validation


@dataclass
class Issue:
    kind: str
    message: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, kind, message, witness=()):
        self.issues.append(Issue(kind, message, tuple(witness)))

    def __str__(self):
        if self.ok:
            head = "valid"
        else:
            head = f"INVALID ({len(self.issues)} issues)"
        lines = [head]
        lines += [f"  note: {n}" for n in self.notes]
        lines += [f"  {i.kind}: {i.message}" for i in self.issues]
        return "\n".join(lines)


_MAX_PER_KIND = 20


def validate_category(cat: FinCategory) -> ValidationReport:
    rep = ValidationReport()
    n, m = cat.object_count, cat.arrow_count
    if n == 0:
        rep.notes.append("degenerate: empty category, its algebra is the zero algebra")
    counts = {}

    def add(kind, message, witness=()):
        counts[kind] = counts.get(kind, 0) + 1
        if counts[kind] <= _MAX_PER_KIND:
            rep.add(kind, message, witness)

    lab = cat.arrow_labels
    if not (len(cat.dom) == len(cat.cod) == m and len(cat.identity) == n and len(cat.table) == m):
        rep.add("shape", "dom/cod/identity/table sizes disagree with the arrow and object counts")
        return rep
    for c in range(m):
        if not (0 <= cat.dom[c] < n and 0 <= cat.cod[c] < n):
            add("shape", f"arrow {lab[c]} has an out-of-range endpoint", (c,))
        if len(cat.table[c]) != m:
            add("shape", f"table row {c} has the wrong length", (c,))
    if not rep.ok:
        return rep
    for x in range(n):
        i = cat.identity[x]
        if not 0 <= i < m or cat.dom[i] != x or cat.cod[i] != x:
            add("identity", f"identity of object {cat.object_labels[x]} is not an endomorphism of it", (x,))
    if not rep.ok:
        return rep

    for g in range(m):
        for f in range(m):
            h = cat.table[g][f]
            if cat.dom[g] == cat.cod[f]:
                if not 0 <= h < m:
                    add("gap", f"{lab[g]} o {lab[f]} is composable but undefined", (g, f))
                elif cat.dom[h] != cat.dom[f] or cat.cod[h] != cat.cod[g]:
                    add("endpoints", f"{lab[g]} o {lab[f]} = {lab[h]} has wrong domain or codomain", (g, f))
            elif h != NONE:
                add("spurious", f"{lab[g]} o {lab[f]} is defined but not composable", (g, f))
    if not rep.ok:
        return rep

    for c in range(m):
        if cat.table[cat.identity[cat.cod[c]]][c] != c:
            add("unit", f"id o {lab[c]} != {lab[c]}", (cat.identity[cat.cod[c]], c))
        if cat.table[c][cat.identity[cat.dom[c]]] != c:
            add("unit", f"{lab[c]} o id != {lab[c]}", (c, cat.identity[cat.dom[c]]))

    leaving = [cat.arrows_from(x) for x in range(n)]
    for f in range(m):
        for g in leaving[cat.cod[f]]:
            gf = cat.table[g][f]
            for h in leaving[cat.cod[g]]:
                if cat.table[cat.table[h][g]][f] != cat.table[h][gf]:
                    add("associativity",
                        f"({lab[h]} o {lab[g]}) o {lab[f]} != {lab[h]} o ({lab[g]} o {lab[f]})",
                        (h, g, f))
    for kind, k in counts.items():
        if k > _MAX_PER_KIND:
            rep.notes.append(f"{k - _MAX_PER_KIND} further {kind} issues suppressed")
    return rep


def from_composition(object_labels, arrows, compose, identities=None, name="") -> FinCategory:
    """Assemble a category from arrows ``(label, dom, cod)`` and a composition map.

    ``compose`` maps ``(g, f)`` arrow indices to ``g o f``.  Identities default
    to the arrow carrying the object's own label.
    """
    object_labels = tuple(str(o) for o in object_labels)
    labels = tuple(a[0] for a in arrows)
    dom = tuple(a[1] for a in arrows)
    cod = tuple(a[2] for a in arrows)
    if identities is None:
        identities = tuple(labels.index(o) for o in object_labels)
    m = len(arrows)
    table = [[NONE] * m for _ in range(m)]
    for (g, f), h in compose.items():
        table[g][f] = h
    return FinCategory(object_labels, labels, dom, cod, tuple(identities),
                       tuple(tuple(r) for r in table), name)


# ---------------------------------------------------------------------------
# builders


def discrete(n: int) -> FinCategory:
    obs = [str(i) for i in range(n)]
    return from_composition(obs, [(o, i, i) for i, o in enumerate(obs)],
                            {(i, i): i for i in range(n)}, name=f"discrete({n})")


def _pair_label(i, j, n):
    return f"c{i + 1}{j + 1}" if n <= 9 else f"c{i + 1}.{j + 1}"


def indiscrete(n: int) -> FinCategory:
    """Exactly one arrow ``c_ij : j -> i`` between any two objects (1-based labels)."""
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    arrows = [(_pair_label(i, j, n), j, i) for i in range(n) for j in range(n)]
    compose = {(idx[i, j], idx[j, k]): idx[i, k]
               for i in range(n) for j in range(n) for k in range(n)}
    return from_composition([str(i + 1) for i in range(n)], arrows, compose,
                            identities=[idx[i, i] for i in range(n)],
                            name=f"indiscrete({n})")


def indiscrete_arrow(cat: FinCategory, i: int, j: int) -> int:
    """The unique arrow ``j -> i`` of an indiscrete category (0-based objects)."""
    (c,) = cat.hom(j, i)
    return c


def monoid_from_table(table: Sequence[Sequence[int]], unit_index: int,
                      labels: Optional[Sequence[str]] = None, name="monoid") -> FinCategory:
    """One-object category whose composition ``a o b`` is ``table[a][b]``."""
    n = len(table)
    if n == 0:
        raise NotAMonoid("a monoid has at least its unit")
    if any(len(row) != n for row in table):
        raise NotAMonoid("multiplication table is not square")
    if any(not (isinstance(x, int) and 0 <= x < n) for row in table for x in row):
        raise NotAMonoid("multiplication table is not closed")
    if not 0 <= unit_index < n:
        raise NotAMonoid(f"unit index {unit_index} out of range")
    u = unit_index
    for a in range(n):
        if table[u][a] != a or table[a][u] != a:
            raise NotAMonoid(f"element {a} breaks the unit law")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAMonoid(f"associativity fails on ({a}, {b}, {c})")
    if labels is None:
        labels = ["e" if a == u else f"m{a}" for a in range(n)]
    arrows = [(str(labels[a]), 0, 0) for a in range(n)]
    compose = {(a, b): table[a][b] for a in range(n) for b in range(n)}
    return from_composition(["*"], arrows, compose, identities=[u], name=name)


def cyclic_group(n: int) -> FinCategory:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    labels = ["e", "g"] + [f"g{k}" for k in range(2, n)]
    return monoid_from_table(table, 0, labels[:n], name=f"Z/{n}")


def symmetric_group(n: int) -> FinCategory:
    """Permutations in one-line notation; ``p o q`` applies ``q`` first."""
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    labels = ["e" if k == 0 else "".join(str(x + 1) for x in p) for k, p in enumerate(perms)]
    return monoid_from_table(table, 0, labels, name=f"S{n}")


def poset_from_relation(n: int, leq: Iterable, labels: Optional[Sequence[str]] = None,
                        name="poset") -> FinCategory:
    """One arrow ``a -> b`` for every pair ``(a, b)`` with ``a <= b``."""
    rel = set()
    for pair in leq:
        a, b = pair
        if not (0 <= a < n and 0 <= b < n):
            raise NotAPoset(f"pair {pair!r} is outside 0..{n - 1}")
        rel.add((a, b))
    for a in range(n):
        if (a, a) not in rel:
            raise NotAPoset(f"not reflexive: missing ({a}, {a})")
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise NotAPoset(f"not antisymmetric: ({a}, {b}) and ({b}, {a})")
    for (a, b), (b2, c) in itertools.product(rel, rel):
        if b == b2 and (a, c) not in rel:
            raise NotAPoset(f"not transitive: ({a}, {b}), ({b}, {c}) but not ({a}, {c})")
    if labels is None:
        labels = [str(a) for a in range(n)]
    labels = [str(x) for x in labels]
    pairs = sorted(rel, key=lambda p: (p[0] != p[1], p))
    index = {p: k for k, p in enumerate(pairs)}
    arrows = [(labels[a] if a == b else f"{labels[a]}->{labels[b]}", a, b) for a, b in pairs]
    compose = {(index[b, c], index[a, b]): index[a, c]
               for (a, b) in pairs for (b2, c) in pairs if b == b2}
    return from_composition(labels, arrows, compose,
                            identities=[index[a, a] for a in range(n)], name=name)


def chain(n: int) -> FinCategory:
    return poset_from_relation(n, [(a, b) for a in range(n) for b in range(a, n)],
                               name=f"chain({n})")


def divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def divisor_poset(n: int) -> FinCategory:
    ds = divisors(n)
    rel = [(i, j) for i, a in enumerate(ds) for j, b in enumerate(ds) if b % a == 0]
    return poset_from_relation(len(ds), rel, [str(d) for d in ds], name=f"divisors({n})")


def _subset_label(mask, k):
    return "{" + ",".join(str(i + 1) for i in range(k) if mask >> i & 1) + "}"


def boolean_lattice(k: int) -> FinCategory:
    """Subsets of ``{1..k}`` under inclusion; object ``s`` is the bitmask ``s``."""
    n = 1 << k
    rel = [(s, t) for s in range(n) for t in range(n) if s & t == s]
    return poset_from_relation(n, rel, [_subset_label(s, k) for s in range(n)],
                               name=f"B_{k}")


def free_on_acyclic_quiver(vertices: int, edges: Sequence, vertex_labels=None,
                           name="free") -> FinCategory:
    """Free category on a quiver; arrows are all directed paths (empty ones included).

    ``edges`` holds ``(src, dst, label)``.  A path is written ``e2.e1`` for
    ``e1`` followed by ``e2``.
    """
    if vertex_labels is None:
        vertex_labels = [str(v) for v in range(vertices)]
    edges = [tuple(e) for e in edges]
    for e in edges:
        if not (0 <= e[0] < vertices and 0 <= e[1] < vertices):
            raise BadObject(f"edge {e!r} has an endpoint outside 0..{vertices - 1}")
    deps = {v: set() for v in range(vertices)}
    for s, t, _ in edges:
        deps[t].add(s)
    try:
        tuple(graphlib.TopologicalSorter(deps).static_order())
    except graphlib.CycleError as exc:
        raise CyclicQuiver(f"quiver has a directed cycle through {exc.args[1]!r}") from None
    out = {v: [k for k, e in enumerate(edges) if e[0] == v] for v in range(vertices)}

    paths = []  # (src, edge tuple)

    def walk(src, here, trail):
        paths.append((src, trail))
        for k in out[here]:
            walk(src, edges[k][1], trail + (k,))

    for v in range(vertices):
        walk(v, v, ())
    paths.sort(key=lambda p: (len(p[1]), p))

    def end(p):
        return edges[p[1][-1]][1] if p[1] else p[0]

    def label(p):
        if not p[1]:
            return str(vertex_labels[p[0]])
        return ".".join(str(edges[k][2]) for k in reversed(p[1]))

    index = {p: k for k, p in enumerate(paths)}
    arrows = [(label(p), p[0], end(p)) for p in paths]
    compose = {}
    for g in paths:
        for f in paths:
            if g[0] == end(f):
                compose[index[g], index[f]] = index[(f[0], f[1] + g[1])]
    return from_composition([str(v) for v in vertex_labels], arrows, compose,
                            identities=[index[(v, ())] for v in range(vertices)], name=name)


def is_indiscrete(cat: FinCategory) -> bool:
    n = cat.object_count
    if cat.arrow_count != n * n:
        return False
    seen = {(cat.dom[c], cat.cod[c]) for c in cat.arrows}
    return len(seen) == n * n


# ---------------------------------------------------------------------------
# daggers


@dataclass(frozen=True, eq=False)
class Dagger:
    category: FinCategory
    map: tuple

    def __call__(self, c: int) -> int:
        return self.map[c]


def validate_dagger(cat: FinCategory, dag: Dagger) -> ValidationReport:
    rep = ValidationReport()
    lab = cat.arrow_labels
    d = dag.map
    if len(d) != cat.arrow_count or any(not 0 <= x < cat.arrow_count for x in d):
        rep.add("shape", "dagger must map every arrow to an arrow")
        return rep
    for x in cat.objects:
        i = cat.identity[x]
        if d[i] != i:
            rep.add("objects", f"dagger moves identity {lab[i]} to {lab[d[i]]}", (i,))
    for c in cat.arrows:
        if d[d[c]] != c:
            rep.add("involutive", f"{lab[c]} daggered twice gives {lab[d[d[c]]]}", (c,))
        if cat.dom[d[c]] != cat.cod[c] or cat.cod[d[c]] != cat.dom[c]:
            rep.add("endpoints", f"{lab[c]}^dagger does not reverse {lab[c]}", (c,))
    if not rep.ok:
        return rep
    for g in cat.arrows:
        for f in cat.arrows:
            if cat.dom[g] != cat.cod[f]:
                continue
            lhs = d[cat.table[g][f]]
            rhs = cat.table[d[f]][d[g]]
            if lhs != rhs:
                rep.add("functoriality",
                        f"({lab[g]} o {lab[f]})^dagger != {lab[f]}^dagger o {lab[g]}^dagger", (g, f))
    return rep


def inverse_of(cat: FinCategory, c: int) -> Optional[int]:
    for d in cat.hom(cat.cod[c], cat.dom[c]):
        if (cat.table[d][c] == cat.identity[cat.dom[c]]
                and cat.table[c][d] == cat.identity[cat.cod[c]]):
            return d
    return None


def canonical_dagger(cat: FinCategory, kind: str) -> Dagger:
    if kind == "identity":
        mapping = tuple(cat.arrows)
    elif kind == "inverse":
        inv = []
        for c in cat.arrows:
            d = inverse_of(cat, c)
            if d is None:
                raise NoInverse(f"arrow {cat.arrow_labels[c]} has no inverse")
            inv.append(d)
        mapping = tuple(inv)
    elif kind == "reverse":
        if not is_indiscrete(cat):
            raise NotIndiscrete("the reverse dagger needs an indiscrete category")
        mapping = tuple(cat.hom(cat.cod[c], cat.dom[c])[0] for c in cat.arrows)
    else:
        raise ValueError(f"unknown dagger kind {kind!r}")
    dag = Dagger(cat, mapping)
    report = validate_dagger(cat, dag)
    if not report.ok:
        raise InvalidDagger(f"{kind} map is not a dagger: {report.issues[0].message}")
    return dag


def dagger_from_map(cat: FinCategory, mapping: Sequence[int]) -> Dagger:
    dag = Dagger(cat, tuple(mapping))
    report = validate_dagger(cat, dag)
    if not report.ok:
        raise InvalidDagger(report.issues[0].message)
    return dag
