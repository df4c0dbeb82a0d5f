"""Reference computations used as independent oracles in the tests."""
import itertools
import math
from fractions import Fraction

from sympy import factorint
from sympy.functions.combinatorial.numbers import mobius as sympy_mobius


def naive_convolve(a, b):
    """Convolution by scanning every arrow pair, without the factorization table."""
    cat, rig = a.category, a.rig
    out = [rig.zero] * cat.arrow_count
    for g, f in itertools.product(cat.arrows, repeat=2):
        if cat.dom[g] == cat.cod[f]:
            h = cat.compose(g, f)
            out[h] = rig.add(out[h], rig.mul(a[g], b[f]))
    return out


def factorizations_brute(cat, h):
    return sorted((g, f) for g in cat.arrows for f in cat.arrows
                  if cat.dom[g] == cat.cod[f] and cat.compose(g, f) == h)


def poset_mobius(n, leq):
    """mu(x, y) from the recursion mu(x, x) = 1, mu(x, y) = -sum_{x<=z<y} mu(x, z)."""
    leq = set(leq)
    mu = {}

    def rec(x, y):
        if (x, y) in mu:
            return mu[x, y]
        if x == y:
            val = Fraction(1)
        else:
            val = -sum((rec(x, z) for z in range(n)
                        if (x, z) in leq and (z, y) in leq and z != y), Fraction(0))
        mu[x, y] = val
        return val

    return {(x, y): rec(x, y) for (x, y) in leq}


def arithmetic_mobius(n):
    return int(sympy_mobius(n))


def arithmetic_mobius_by_factoring(n):
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return (-1) ** len(f)


def matmul(A, B, add=lambda x, y: x + y, mul=lambda x, y: x * y, zero=0):
    n, k, m = len(A), len(B), len(B[0])
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = zero
            for t in range(k):
                acc = add(acc, mul(A[i][t], B[t][j]))
            out[i][j] = acc
    return out


def minplus(A, B):
    return matmul(A, B, add=min, mul=lambda x, y: x + y, zero=math.inf)


def floyd_warshall(n, edges):
    d = [[0.0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for s, t, w in edges:
        d[s][t] = min(d[s][t], w)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                d[i][j] = min(d[i][j], d[i][k] + d[k][j])
    return d


def bellman_ford_hops(n, edges, k):
    """Shortest distances using at most k edges."""
    d = [[0.0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for _ in range(k):
        nxt = [row[:] for row in d]
        for i in range(n):
            for s, t, w in edges:
                nxt[i][t] = min(nxt[i][t], d[i][s] + w)
        d = nxt
    return d
