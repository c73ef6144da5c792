"""Brute-force reference computations.

These deliberately avoid the code paths they check: lines are compared as
explicit point sets, subspaces as closed sets of vectors, collisions by
sorting pairs.  Only scalar field arithmetic is shared.
"""

from itertools import combinations, product


def vec_add(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(F, t, u):
    return tuple(F.mul(t, a) for a in u)


def all_points(q, n):
    return [tuple(reversed(p)) for p in product(range(q), repeat=n)]


def line_through(F, y, x):
    """The point set {y + t(x - y)}."""
    d = vec_sub(F, x, y)
    return frozenset(vec_add(F, y, vec_scale(F, t, d)) for t in range(F.q))


def brute_radial_size(F, E, y):
    return len({line_through(F, y, x) for x in E if tuple(x) != tuple(y)})


def span(F, vectors, n):
    pts = {(0,) * n}
    for v in vectors:
        pts = {vec_add(F, p, vec_scale(F, t, v)) for p in pts for t in range(F.q)}
    return frozenset(pts)


def brute_subspaces(F, n, k):
    """All k-dimensional subspaces of F^n as frozensets of points."""
    pts = all_points(F.q, n)
    out = set()
    for vs in combinations(pts, k):
        s = span(F, vs, n)
        if len(s) == F.q ** k:
            out.add(s)
    if k == 0:
        out.add(frozenset({(0,) * n}))
    return out


def brute_collisions(X, label):
    """Pairs of distinct points sharing a label."""
    return sum(1 for a, b in combinations(list(X), 2) if label(a) == label(b))


def same_coset(F, gamma_points, u, v):
    return vec_sub(F, u, v) in gamma_points
