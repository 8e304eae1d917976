"""Independent reference constructions used by the tests.

Nothing here imports the package's root-system or group code: root systems
are built from their textbook coordinates, groups are enumerated by brute
force.
"""

from fractions import Fraction
from itertools import combinations, product

import numpy as np


def roots_A(n):
    out = []
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j:
                v = [0] * (n + 1)
                v[i], v[j] = 1, -1
                out.append(tuple(v))
    return out


def roots_D(n):
    out = []
    for i, j in combinations(range(n), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0] * n
            v[i], v[j] = si, sj
            out.append(tuple(v))
    return out


def roots_E8():
    out = [tuple(Fraction(c) for c in v) for v in roots_D(8)]
    half = Fraction(1, 2)
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            out.append(tuple(s * half for s in signs))
    return out


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def roots_E7():
    e8 = roots_E8()
    a = e8[0]
    return [r for r in e8 if _dot(r, a) == 0]


def roots_E6():
    e8 = roots_E8()
    a = e8[0]
    b = next(r for r in e8 if _dot(r, a) == -1)  # a, b span an A2
    return [r for r in e8 if _dot(r, a) == 0 and _dot(r, b) == 0]


def root_system(symbol):
    fam, n = symbol[0], int(symbol[1:])
    if fam == "A":
        return roots_A(n)
    if fam == "D":
        return roots_D(n)
    return {6: roots_E6, 7: roots_E7, 8: roots_E8}[n]()


def positive_roots(roots):
    # a generic linear functional picks a positive system
    w = [Fraction(1, 3**i + 7) + i for i in range(len(roots[0]))]
    return [r for r in roots if _dot(w, r) > 0]


def odd_pair_graph(symbol):
    """(vertices, edges) of the graph on positive roots joined when the product is odd."""
    pos = positive_roots(root_system(symbol))
    edges = sum(1 for x, y in combinations(pos, 2) if _dot(x, y) % 2 == 1)
    return len(pos), edges


def gf2_rank(rows):
    a = np.array(rows, dtype=np.uint8) % 2
    r = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(nrows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def closure(perms):
    """All elements of the group generated by uint16 permutation tables."""
    ident = np.arange(len(perms[0]), dtype=np.uint16)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in perms:
                h = s[g]
                k = h.tobytes()
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())
