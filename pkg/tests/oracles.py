"""Brute-force reference computations, written without the package's algorithms."""

from __future__ import annotations

import itertools
from fractions import Fraction


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def det(mat):
    """Laplace expansion; fine for the small sizes used here."""
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    return sum((-1) ** j * mat[0][j] * det([row[:j] + row[j + 1:] for row in mat[1:]]) for j in range(n))


def frac_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def primitive(v):
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g else tuple(v)


def cofactor_normal(vectors):
    """Integer normal to n-1 vectors in Z^n via signed maximal minors."""
    n = len(vectors) + 1
    return tuple((-1) ** i * det([[v[j] for j in range(n) if j != i] for v in vectors]) for i in range(n))


def brute_facet_normals(rays):
    """Facets of a full-dimensional pointed cone: normals of (n-1)-subsets supporting the cone."""
    n = len(rays[0])
    out = set()
    for sub in itertools.combinations(rays, n - 1):
        if frac_rank(sub) != n - 1:
            continue
        w = primitive(cofactor_normal(list(sub)))
        vals = [dot(w, r) for r in rays]
        if all(v >= 0 for v in vals):
            out.add(w)
        elif all(v <= 0 for v in vals):
            out.add(tuple(-x for x in w))
    return out


def brute_extreme_rays(gens):
    """Extreme rays of a full-dimensional pointed cone: generators not in the cone of the others."""
    gens = sorted({primitive(g) for g in gens})
    normals = brute_facet_normals(gens)
    out = set()
    for g in gens:
        tight = [w for w in normals if dot(w, g) == 0]
        if frac_rank(tight) == len(g) - 1:
            out.add(g)
    return out


def is_unimodular_extendable(rays, n=None, box=None):
    """Search for integer vectors completing ``rays`` to a basis of Z^n (det = +-1)."""
    k = len(rays)
    if k == 0:
        return True
    n = len(rays[0])
    if box is None:
        box = 2 if n - k >= 2 else 3
    if frac_rank(rays) < k:
        return False
    if k == n:
        return abs(det([list(r) for r in rays])) == 1
    cands = [v for v in itertools.product(range(-box, box + 1), repeat=n) if any(v)]
    for extra in itertools.combinations(cands, n - k):
        if abs(det([list(r) for r in rays] + [list(v) for v in extra])) == 1:
            return True
    return False


def lattice_points_dual(rays, radius):
    n = len(rays[0])
    return [m for m in itertools.product(range(-radius, radius + 1), repeat=n) if all(dot(m, r) >= 0 for r in rays)]


def apply_term(coeff_exp, e, p):
    c, m = coeff_exp
    return c * dot(m, p), tuple(a + b for a, b in zip(m, e))
