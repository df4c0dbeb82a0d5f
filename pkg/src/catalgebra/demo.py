"""Built-in catalog of worked examples, each checked against an independent oracle."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import algebra as alg
from . import fincat
from .gns import build_pre_hilbert, build_semi_hilbert, verify_gns, verify_star_representation
from .moebius import invert, zeta
from .rigs import COMPLEX, RATIONAL, TROPICAL
from .states import LinearFunctional, check_state, probability_space

INF = math.inf

# weighted digraph on 5 nodes: (src, dst, weight)
SHORTEST_PATH_EDGES = (
    (0, 1, 4.0), (0, 2, 1.0), (2, 1, 2.0), (1, 3, 1.0), (2, 3, 5.0),
    (3, 4, 3.0), (4, 0, 2.0), (1, 4, 7.0),
)


@dataclass
class DemoResult:
    name: str
    passed: bool
    lines: list = field(default_factory=list)
    data: dict = field(default_factory=dict)


def number_theoretic_mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def floyd_warshall(n, edges):
    d = [[0.0 if i == j else INF for j in range(n)] for i in range(n)]
    for s, t, w in edges:
        d[s][t] = min(d[s][t], w)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def hop_limited_distances(n, edges, k):
    d = [[0.0 if i == j else INF for j in range(n)] for i in range(n)]
    for _ in range(k):
        nxt = [row[:] for row in d]
        for s, t, w in edges:
            for i in range(n):
                if d[i][s] + w < nxt[i][t]:
                    nxt[i][t] = d[i][s] + w
        d = nxt
    return d


def adjacency_element(cat, edges):
    """Tropical element with 0 on identities and the edge weight on ``c_ts``."""
    coeffs = [INF] * cat.arrow_count
    for x in cat.objects:
        coeffs[cat.identity[x]] = 0.0
    for s, t, w in edges:
        c = fincat.indiscrete_arrow(cat, t, s)
        coeffs[c] = min(coeffs[c], w)
    return alg.AlgebraElement(cat, TROPICAL, coeffs)


def _mobius_table(cat, mu):
    return {cat.arrow_labels[c]: RATIONAL.format(v) for c, v in enumerate(mu.coeffs)}


def demo_chain():
    cat = fincat.chain(3)
    cert = invert(zeta(cat, RATIONAL))
    mu = cert.inverse
    expected = {"0": 1, "1": 1, "2": 1, "0->1": -1, "1->2": -1, "0->2": 0}
    ok = cert.valid and all(mu[cat.arrow_index(k)] == v for k, v in expected.items())
    return DemoResult("chain poset 0<1<2: Moebius function", ok,
                      [f"mu = {_mobius_table(cat, mu)}", f"residuals zero: {cert.valid}"],
                      {"mu": _mobius_table(cat, mu)})


def demo_divisors(n=60):
    cat = fincat.divisor_poset(n)
    cert = invert(zeta(cat, RATIONAL))
    mu = cert.inverse
    bad = []
    for c in cat.arrows:
        a = int(cat.object_labels[cat.dom[c]])
        b = int(cat.object_labels[cat.cod[c]])
        if mu[c] != number_theoretic_mobius(b // a):
            bad.append(cat.arrow_labels[c])
    bottom = cat.object_index("1")
    from_one = {cat.object_labels[cat.cod[c]]: RATIONAL.format(mu[c]) for c in cat.arrows_from(bottom)}
    ok = cert.valid and not bad
    return DemoResult(f"divisor poset of {n}: Moebius vs number-theoretic mu", ok,
                      [f"mu(1->d) = {from_one}",
                       f"certificate residuals zero: {cert.valid}",
                       f"mismatches with the arithmetic oracle: {bad or 'none'}"],
                      {"mu_from_1": from_one})


def demo_boolean(k=3):
    cat = fincat.boolean_lattice(k)
    cert = invert(zeta(cat, RATIONAL))
    mu = cert.inverse
    bad = [cat.arrow_labels[c] for c in cat.arrows
           if mu[c] != (-1) ** bin(cat.dom[c] ^ cat.cod[c]).count("1")]
    return DemoResult(f"Boolean lattice B_{k}: Moebius vs inclusion-exclusion", cert.valid and not bad,
                      [f"{cat.arrow_count} comparable pairs, mismatches: {bad or 'none'}"])


def demo_symmetric(rng, trials, tol):
    cat = fincat.symmetric_group(3)
    lines, ok = [], fincat.validate_category(cat).ok
    dag = fincat.canonical_dagger(cat, "inverse")
    worst = 0.0
    for _ in range(trials):
        a = alg.random_element(cat, COMPLEX, rng)
        b = alg.random_element(cat, COMPLEX, rng)
        lhs = alg.star(alg.convolve(a, b), dag)
        rhs = alg.convolve(alg.star(b, dag), alg.star(a, dag))
        worst = max(worst, max(abs(x - y) for x, y in zip(lhs.coeffs, rhs.coeffs)))
    ok &= worst <= 1e-12
    lines.append(f"star reverses products on {trials} random pairs, max residual {worst:.3e}")

    delta = [RATIONAL.one if cat.is_identity(c) else RATIONAL.zero for c in cat.arrows]
    space = probability_space(LinearFunctional(cat, RATIONAL, tuple(delta)), dag)
    g = build_semi_hilbert(space)
    rep = verify_gns(g, trials, tol, rng)
    ok &= rep.ok
    lines.append(f"delta state over Q: GNS identities exact: {rep.ok}")

    cdelta = tuple(complex(x) for x in delta)
    p = build_pre_hilbert(build_semi_hilbert(probability_space(LinearFunctional(cat, COMPLEX, cdelta), dag)), tol)
    unit_err = max(float(abs(r.conj().T @ r - np.eye(p.quotient_dim)).max()) for r in p.rep_q)
    ok &= p.quotient_dim == 6 and unit_err <= 1e-8
    lines.append(f"delta state over C: quotient dim {p.quotient_dim}, unitarity residual {unit_err:.3e}")
    return DemoResult("symmetric group S3", ok, lines)


def demo_z2_family(rng, trials, tol):
    cat = fincat.cyclic_group(2)
    dag = fincat.canonical_dagger(cat, "inverse")
    lines, ok, dims = [], True, {}
    for t in (-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5):
        phi = LinearFunctional(cat, COMPLEX, (1 + 0j, complex(t)))
        cert = check_state(phi, dag, tol)
        ok &= cert.is_state == (abs(t) <= 1)
        detail = f"t={t:+.1f}: {cert.verdict}, min eigenvalue {cert.min_eigenvalue:+.3f}"
        if cert.is_state:
            p = build_pre_hilbert(build_semi_hilbert(probability_space(phi, dag, tol)), tol)
            rep = verify_star_representation(p, trials, 1e-8, rng)
            dims[t] = p.quotient_dim
            ok &= rep.ok and p.quotient_dim == (2 if abs(t) < 1 else 1)
            detail += f", quotient dim {p.quotient_dim}, max residual {rep.max_residual:.3e}"
        lines.append(detail)
    return DemoResult("Z/2 states phi=(1,t) and their GNS quotients", ok, lines,
                      {"quotient_dims": {str(k): v for k, v in dims.items()}})


def demo_indiscrete(rng, trials, tol):
    lines, ok = [], True
    cat = fincat.indiscrete(3)
    worst = 0
    for _ in range(trials):
        a = alg.random_element(cat, RATIONAL, rng)
        b = alg.random_element(cat, RATIONAL, rng)
        if alg.to_matrix(alg.convolve(a, b)) != alg.to_matrix(a) @ alg.to_matrix(b):
            worst += 1
        if alg.from_matrix(cat, RATIONAL, alg.to_matrix(a)) != a:
            worst += 1
    ok &= worst == 0
    lines.append(f"indiscrete(3) over Q: matrix isomorphism on {trials} pairs, failures {worst}")

    cat2 = fincat.indiscrete(2)
    dag = fincat.canonical_dagger(cat2, "reverse")
    trace = tuple(0.5 + 0j if cat2.is_identity(c) else 0j for c in cat2.arrows)
    p = build_pre_hilbert(build_semi_hilbert(probability_space(LinearFunctional(cat2, COMPLEX, trace), dag)), tol)
    rep = verify_star_representation(p, trials, 1e-8, rng)
    ok &= rep.ok and p.quotient_dim == 4
    lines.append(f"indiscrete(2) normalized trace: quotient dim {p.quotient_dim}, "
                 f"max residual {rep.max_residual:.3e}")
    return DemoResult("indiscrete categories and matrix algebras", ok, lines)


def demo_quiver():
    cat = fincat.free_on_acyclic_quiver(3, [(0, 1, "a"), (1, 2, "b")], name="A3")
    ok = fincat.validate_category(cat).ok and cat.arrow_count == 6
    ia = alg.indeterminate(cat, RATIONAL, cat.arrow_index("a"))
    ib = alg.indeterminate(cat, RATIONAL, cat.arrow_index("b"))
    ba = alg.indeterminate(cat, RATIONAL, cat.arrow_index("b.a"))
    ok &= alg.convolve(ib, ia) == ba and alg.convolve(ia, ib) == alg.zero(cat, RATIONAL)
    return DemoResult("A3 quiver path algebra", ok,
                      [f"{cat.arrow_count} paths: {', '.join(cat.arrow_labels)}",
                       "iota^b iota^a = iota^(b.a), iota^a iota^b = 0"])


def demo_tropical():
    n = 5
    cat = fincat.indiscrete(n)
    a = adjacency_element(cat, SHORTEST_PATH_EDGES)
    ok, lines = True, []
    power = alg.unit(cat, TROPICAL)
    for k in range(1, n):
        power = alg.convolve(power, a)
        M = alg.to_matrix(power)
        oracle = hop_limited_distances(n, SHORTEST_PATH_EDGES, k)
        match = all(M[t, s] == oracle[s][t] for s in range(n) for t in range(n))
        ok &= match
        lines.append(f"power {k}: <= {k}-hop distances match: {match}")
    fw = floyd_warshall(n, SHORTEST_PATH_EDGES)
    M = alg.to_matrix(power)
    match = all(M[t, s] == fw[s][t] for s in range(n) for t in range(n))
    ok &= match
    lines.append(f"power {n - 1} equals Floyd-Warshall: {match}")
    return DemoResult("tropical shortest paths on a 5-node digraph", ok, lines,
                      {"distances": [[_fmt_trop(M[t, s]) for t in range(n)] for s in range(n)]})


def _fmt_trop(x):
    return TROPICAL.format(x)


def run_demo(seed: int = 0, trials: int = 100, tol: float = 1e-9) -> list:
    rng = random.Random(seed)
    return [
        demo_chain(),
        demo_divisors(60),
        demo_boolean(3),
        demo_symmetric(rng, trials, tol),
        demo_z2_family(rng, trials, tol),
        demo_indiscrete(rng, trials, tol),
        demo_quiver(),
        demo_tropical(),
    ]
