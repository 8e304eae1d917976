"""Exact arithmetic for integral lattices given by Gram matrices.

Everything here works with Python ints and ``Fraction`` so that no floating
point tolerance ever enters a norm comparison.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[int, ...]

_INT64 = 2**63 - 1


class PreconditionError(ValueError):
    pass


class InternalConsistencyError(RuntimeError):
    pass


def _checked(value: int) -> int:
    if abs(value) > _INT64:
        raise OverflowError(f"value {value} does not fit in 64 bits")
    return value


@dataclass(frozen=True)
class GramLattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(int(c) for c in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise PreconditionError("gram must be a nonempty square matrix")
        for i in range(n):
            if g[i][i] % 2:
                raise PreconditionError("gram must have even diagonal")
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise PreconditionError("gram must be symmetric")
        if determinant(g) == 0:
            raise PreconditionError("gram must be nondegenerate")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def inner(self, x: Sequence, y: Sequence):
        return inner(self, x, y)

    def norm(self, x: Sequence):
        return inner(self, x, x)


@dataclass(frozen=True)
class Sublattice:
    ambient: GramLattice
    basis: tuple[Vec, ...]

    def __post_init__(self):
        basis = tuple(tuple(int(c) for c in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        if any(len(v) != self.ambient.rank for v in basis):
            raise PreconditionError("basis vectors must live in the ambient lattice")
        if basis and rank_q(basis) != len(basis):
            raise PreconditionError("basis vectors must be linearly independent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(inner(self.ambient, x, y) for y in self.basis) for x in self.basis)

    def lattice(self) -> GramLattice:
        return GramLattice(self.gram())

    def to_ambient(self, coords: Sequence) -> tuple:
        n = self.ambient.rank
        return tuple(sum(c * v[k] for c, v in zip(coords, self.basis)) for k in range(n))


def inner(L: GramLattice, x: Sequence, y: Sequence):
    """``x^T gram y``; exact for int or Fraction entries."""
    n = L.rank
    if len(x) != n or len(y) != n:
        raise PreconditionError(f"dimension mismatch: lattice rank {n}, got {len(x)} and {len(y)}")
    g = L.gram
    total = 0
    for i in range(n):
        if x[i]:
            row = g[i]
            total += x[i] * sum(row[j] * y[j] for j in range(n) if y[j])
    if isinstance(total, int):
        _checked(total)
    return total


# --- exact linear algebra -------------------------------------------------------------

def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank_q(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(c) for c in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def solve_q(a: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve the square rational system ``a x = rhs``."""
    n = len(a)
    m = [[Fraction(c) for c in row] + [Fraction(r)] for row, r in zip(a, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise PreconditionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [c / p for c in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a_ - f * b_ for a_, b_ in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vec]:
    """Basis of ``{x in Z^n : a x = 0}`` via unimodular column operations.

    The returned basis spans a saturated sublattice of ``Z^n``.
    """
    rows = [list(map(int, r)) for r in a]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    # columns of `a` together with a unimodular transform u, a*u kept in `cols`
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    u = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    pivot_col = 0
    for i in range(len(rows)):
        # gcd-reduce row i across columns pivot_col..n-1
        while True:
            nz = [j for j in range(pivot_col, n) if cols[j][i] != 0]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][i]))
            for j in nz:
                if j == j0:
                    continue
                f = cols[j][i] // cols[j0][i]
                cols[j] = [x - f * y for x, y in zip(cols[j], cols[j0])]
                u[j] = [x - f * y for x, y in zip(u[j], u[j0])]
        nz = [j for j in range(pivot_col, n) if cols[j][i] != 0]
        if nz:
            j0 = nz[0]
            cols[pivot_col], cols[j0] = cols[j0], cols[pivot_col]
            u[pivot_col], u[j0] = u[j0], u[pivot_col]
            pivot_col += 1
    return [tuple(u[j]) for j in range(pivot_col, n)]


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[Vec]:
    """Row-style Hermite normal form: a basis of the Z-span of ``vectors``."""
    m = [list(map(int, v)) for v in vectors if any(v)]
    if not m:
        return []
    n = len(m[0])
    out: list[list[int]] = []
    r = 0
    for col in range(n):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][col] != 0]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: abs(m[i][col]))
            for i in nz:
                if i != i0:
                    f = m[i][col] // m[i0][col]
                    m[i] = [x - f * y for x, y in zip(m[i], m[i0])]
        nz = [i for i in range(r, len(m)) if m[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        m[r], m[i0] = m[i0], m[r]
        if m[r][col] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            f = m[i][col] // m[r][col]
            m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    out = [tuple(row) for row in m[:r]]
    return out


def saturate(S: Sublattice) -> Sublattice:
    """Primitive closure ``span_Q(S) & ambient``."""
    if not S.basis:
        return S
    complement = integer_kernel(S.basis)
    if not complement:
        n = S.ambient.rank
        return Sublattice(S.ambient, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
    closure = integer_kernel(complement, ncols=S.ambient.rank)
    return Sublattice(S.ambient, tuple(hermite_rows(closure)))


def saturation_index(S: Sublattice) -> int:
    d_s = abs(determinant(S.gram()))
    d_sat = abs(determinant(saturate(S).gram()))
    sq, rem = divmod(d_s, d_sat)
    idx = math.isqrt(sq)
    if rem or idx * idx != sq:
        raise InternalConsistencyError("determinant ratio is not a square")
    return idx


# --- definite lattices and short vectors ---------------------------------------------

def _ldl(q: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact ``q = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2``; raises if not positive definite."""
    n = len(q)
    a = [[Fraction(c) for c in row] for row in q]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if a[i][i] <= 0:
            raise PreconditionError("lattice is not negative definite")
        d[i] = a[i][i]
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= mu[i][j] * a[i][k]
    return d, mu


def is_negative_definite(L: GramLattice) -> bool:
    try:
        _ldl([[-c for c in row] for row in L.gram])
    except PreconditionError:
        return False
    return True


def _int_window(center: Fraction, radius_sq: Fraction) -> range:
    """Integers ``x`` with ``(x - center)^2 <= radius_sq``."""
    if radius_sq < 0:
        return range(0)
    approx = math.sqrt(float(radius_sq))
    lo = math.floor(center - approx) - 1
    hi = math.ceil(center + approx) + 1
    while (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def _fincke_pohst(gram, offset: Sequence[Fraction], bound: Fraction) -> list[tuple]:
    """All ``y = x + offset`` (``x`` integral) with ``-y^T gram y <= bound``."""
    n = len(gram)
    d, mu = _ldl([[-c for c in row] for row in gram])
    off = [Fraction(c) for c in offset]
    out: list[tuple] = []
    y = [Fraction(0)] * n

    def rec(i: int, remaining: Fraction):
        # center of coordinate i given y_{i+1..n-1}
        shift = sum((mu[i][j] * y[j] for j in range(i + 1, n)), Fraction(0))
        # y_i = x_i + off_i ; need d_i (y_i + shift)^2 <= remaining
        for x in _int_window(-shift - off[i], remaining / d[i]):
            yi = x + off[i]
            y[i] = yi
            rest = remaining - d[i] * (yi + shift) ** 2
            if i == 0:
                out.append(tuple(y))
            else:
                rec(i - 1, rest)
        y[i] = Fraction(0)

    rec(n - 1, Fraction(bound))
    return out


def _as_plain(v: tuple) -> tuple:
    return tuple(int(c) if c.denominator == 1 else c for c in v)


def short_vectors(L: GramLattice, n: int) -> list[Vec]:
    """All ``x`` with ``x^2 = n`` in a negative definite lattice, sorted lexicographically."""
    if n >= 0:
        raise PreconditionError("target norm must be negative")
    found = _fincke_pohst(L.gram, [0] * L.rank, Fraction(-n))
    vecs = [tuple(int(c) for c in y) for y in found]
    return sorted(v for v in vecs if inner(L, v, v) == n)


def short_vectors_in_coset(L: GramLattice, c: Sequence, m) -> list[tuple]:
    """All ``y in L + c`` with ``y^2 = m``; coordinates are Fractions (ints when integral)."""
    m = Fraction(m)
    if m > 0:
        return []
    found = _fincke_pohst(L.gram, [Fraction(x) for x in c], -m)
    vecs = [_as_plain(y) for y in found if inner(L, y, y) == m]
    return sorted(vecs)


# --- ADE root systems ----------------------------------------------------------------

_ADE_ORDER = {"E": 0, "D": 1, "A": 2}
_SYMBOL_RE = re.compile(r"(\d*)([ADE])(\d+)")


def _symbol_key(sym: str) -> tuple[int, int]:
    return (_ADE_ORDER[sym[0]], -int(sym[1:]))


@dataclass(frozen=True, order=True)
class AdeType:
    components: tuple[str, ...] = field(default=())

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=_symbol_key))
        for s in comps:
            if not _SYMBOL_RE.fullmatch(s) or s[0] not in "ADE":
                raise ValueError(f"bad ADE symbol {s!r}")
        object.__setattr__(self, "components", comps)
        if self.rank > 10:
            raise ValueError("total rank exceeds 10")

    @property
    def rank(self) -> int:
        return sum(int(s[1:]) for s in self.components)

    @property
    def num_roots(self) -> int:
        return sum(2 * num_positive_roots(s) for s in self.components)

    @classmethod
    def parse(cls, text: str) -> "AdeType":
        text = text.strip()
        if text in ("", "0", "-", "∅", "unnodal", "empty"):
            return cls(())
        comps: list[str] = []
        for token in re.split(r"[\s+]+", text):
            pos = 0
            for m in _SYMBOL_RE.finditer(token):
                if m.start() != pos:
                    raise ValueError(f"cannot parse ADE type {text!r}")
                comps += [f"{m.group(2)}{m.group(3)}"] * int(m.group(1) or 1)
                pos = m.end()
            if pos != len(token):
                raise ValueError(f"cannot parse ADE type {text!r}")
        return cls(tuple(comps))

    def __str__(self) -> str:
        if not self.components:
            return "∅"
        out = ""
        for sym, grp in itertools.groupby(self.components):
            k = len(list(grp))
            # a space keeps "D4 2A2" from reading as "D42A2"
            out += (" " if out and k > 1 else "") + f"{k if k > 1 else ''}{sym}"
        return out


def num_positive_roots(symbol: str) -> int:
    fam, n = symbol[0], int(symbol[1:])
    if fam == "A":
        return n * (n + 1) // 2
    if fam == "D":
        return n * (n - 1)
    return {6: 36, 7: 63, 8: 120}[n]


def _functional_values(roots: Sequence[Vec]) -> list[int]:
    dim = len(roots[0])
    base = 3
    while True:
        w = [base**i for i in range(dim)]
        vals = [sum(wi * xi for wi, xi in zip(w, r)) for r in roots]
        if all(vals):
            return vals
        base += 1


def simple_roots(roots: Sequence[Sequence[int]]) -> list[Vec]:
    """Simple roots for the positive system cut out by ``x -> sum 3^i x_i``."""
    roots = [tuple(int(c) for c in r) for r in roots]
    if not roots:
        return []
    vals = _functional_values(roots)
    positive = [r for r, val in zip(roots, vals) if val > 0]
    pos_set = set(positive)
    simple = []
    for r in positive:
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in pos_set for s in positive if s != r
        )
        if not decomposable:
            simple.append(r)
    return sorted(simple)


def _classify_component(nodes: list[int], adj: dict[int, set[int]]) -> str:
    n = len(nodes)
    edges = sum(len(adj[v]) for v in nodes) // 2
    if edges != n - 1:
        raise InternalConsistencyError("Dynkin diagram component is not a tree")
    degs = {v: len(adj[v]) for v in nodes}
    branch = [v for v in nodes if degs[v] >= 3]
    if not branch:
        if max(degs.values(), default=0) > 2:
            raise InternalConsistencyError("unexpected vertex degree")
        return f"A{n}"
    if len(branch) > 1 or degs[branch[0]] != 3:
        raise InternalConsistencyError("diagram is not of ADE shape")
    c = branch[0]
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise InternalConsistencyError("diagram is not of ADE shape")
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    raise InternalConsistencyError(f"diagram with arms {arms} is not of ADE shape")


def dynkin_type(simple: Sequence[Vec], L: GramLattice) -> AdeType:
    """ADE type of the diagram whose edges are pairs with inner product 1."""
    k = len(simple)
    adj: dict[int, set[int]] = {i: set() for i in range(k)}
    for i in range(k):
        for j in range(i + 1, k):
            p = inner(L, simple[i], simple[j])
            if p == 1:
                adj[i].add(j)
                adj[j].add(i)
            elif p != 0:
                raise InternalConsistencyError(f"simple roots with inner product {p}")
    seen: set[int] = set()
    comps = []
    for s in range(k):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_classify_component(comp, adj))
    return AdeType(tuple(comps))


def ade_recognize(roots: Sequence[Sequence[int]], L: GramLattice) -> AdeType:
    """ADE type of a finite root system given by all of its roots."""
    roots = [tuple(int(c) for c in r) for r in roots]
    if not roots:
        return AdeType(())
    rs = set(roots)
    for r in roots:
        if inner(L, r, r) != -2:
            raise PreconditionError(f"vector {r} is not a root")
        if tuple(-c for c in r) not in rs:
            raise PreconditionError("root list is not closed under negation")
    simple = simple_roots(roots)
    t = dynkin_type(simple, L)
    if t.num_roots != len(rs):
        raise InternalConsistencyError(
            f"{len(rs)} roots do not form a root system of type {t}"
        )
    return t
