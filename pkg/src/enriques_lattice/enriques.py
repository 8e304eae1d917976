"""Surface models from root sublattices R of E10.

A model records the root type of R and of its primitive closure, the mod-2
shadow of the roots of R (the splitting-root classes) and the group generated
by their transvections.  From it we get the elliptic-fibration classes with
their weights and reducible fibres, and the M_R cross-check of the
splitting-root criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import e10, f2q, groups
from .intlattice import (
    AdeType,
    GramLattice,
    InternalConsistencyError,
    PreconditionError,
    Sublattice,
    ade_recognize,
    hermite_rows,
    integer_kernel,
    is_negative_definite,
    saturate,
    short_vectors,
    simple_roots,
)

Vec = tuple[int, ...]

ISOTROPIC_COUNT = 527

# Irreducible root system -> (#positive roots, #pairs of positive roots with odd product).
# Regenerated from explicit root systems in tests/test_enriques.py.
_ADE_GRAPH_SIZES = {
    "A1": (1, 0), "A2": (3, 3), "A3": (6, 12), "A4": (10, 30), "A5": (15, 60),
    "A6": (21, 105), "A7": (28, 168), "A8": (36, 252),
    "D4": (12, 48), "D5": (20, 120), "D6": (30, 240), "D7": (42, 420), "D8": (56, 672),
    "E6": (36, 360), "E7": (63, 1008), "E8": (120, 3360),
}


def ade_lookup_table() -> dict[tuple[int, int], str]:
    return {ve: sym for sym, ve in _ADE_GRAPH_SIZES.items()}


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    r_basis: tuple[Vec, ...]  # simple roots of R
    roots: tuple[Vec, ...]  # all roots of R
    tau: AdeType
    taubar: AdeType
    deltabar: frozenset[int]

    @cached_property
    def gbar_gens(self) -> list[groups.GroupElem]:
        return [groups.GroupElem.from_root(r) for r in self.r_basis]

    @cached_property
    def gbar_chain(self) -> groups.StabChain:
        return groups.bsgs(self.gbar_gens)

    @cached_property
    def delta_table(self) -> np.ndarray:
        t = np.zeros(f2q.NPOINTS, dtype=np.uint8)
        t[list(self.deltabar)] = 1
        return t

    @property
    def label(self) -> str:
        return f"({self.tau},{self.taubar})"


def _span_lattice(vectors: Sequence[Vec]) -> Sublattice:
    basis = hermite_rows(vectors)
    return Sublattice(e10.LATTICE, tuple(basis))


def _roots_of(S: Sublattice) -> list[Vec]:
    if S.rank == 0:
        return []
    return sorted(S.to_ambient(c) for c in short_vectors(S.lattice(), -2))


def surface_from_roots(roots: Sequence[Sequence[int]], name: str | None = None) -> SurfaceModel:
    roots = [tuple(int(c) for c in r) for r in roots]
    for r in roots:
        if len(r) != e10.RANK:
            raise PreconditionError(f"root {r} does not have {e10.RANK} coordinates")
        if e10.norm(r) != -2:
            raise PreconditionError(f"{r} has square {e10.norm(r)}, not -2")
    if not roots:
        return SurfaceModel(name or "unnodal", (), (), AdeType(), AdeType(), frozenset())
    R = _span_lattice(roots)
    if not is_negative_definite(R.lattice()):
        raise PreconditionError("the roots do not span a negative definite lattice")
    phi = _roots_of(R)
    tau = ade_recognize(phi, e10.LATTICE)
    taubar = ade_recognize(_roots_of(saturate(R)), e10.LATTICE)
    simple = tuple(simple_roots(phi))
    delta = frozenset(e10.mod2_vec(r) for r in phi)
    for x in delta:
        if f2q.q(x) != 1:
            raise InternalConsistencyError("a root reduces to an isotropic class")
    return SurfaceModel(name or str(tau), simple, tuple(phi), tau, taubar, delta)


_PRESET_ROOTS = {
    "unnodal": [],
    "A1": [1],
    "2A1": [1, 3],
    "3A1": [1, 3, 5],
    "A2": [1, 2],
    # e3..e10 is the E8 subdiagram (e2..e8 with e10 would be D8)
    "E8": [3, 4, 5, 6, 7, 8, 9, 10],
}


@lru_cache(maxsize=None)
def preset(name: str) -> SurfaceModel:
    key = normalize_preset_name(name)
    m = surface_from_roots([e10.unit(i) for i in _PRESET_ROOTS[key]], name=key)
    if key != "unnodal" and (str(m.tau) != key or str(m.taubar) != key):
        raise InternalConsistencyError(f"preset {key} has root types {m.label}")
    return m


def presets() -> dict[str, SurfaceModel]:
    return {k: preset(k) for k in _PRESET_ROOTS}


def normalize_preset_name(name: str) -> str:
    """Accept ``A1``, ``(A1,A1)`` and ``unnodal``/``0``."""
    s = name.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        parts = s[1:-1].split(",")
        if len(parts) != 2 or parts[0] != parts[1]:
            raise PreconditionError(f"no preset with root types {name!r}")
        s = parts[0]
    if s in ("", "0", "∅", "empty"):
        s = "unnodal"
    if s not in _PRESET_ROOTS:
        raise PreconditionError(f"unknown preset {name!r}; choose from {', '.join(_PRESET_ROOTS)}")
    return s


# elliptic fibrations ----------------------------------------------------------


@dataclass(frozen=True)
class FiberComponent:
    ade: str
    multiple: bool

    def __str__(self) -> str:
        return self.ade + ("*" if self.multiple else "")


@dataclass(frozen=True)
class FibrationClass:
    fbar: int
    weight: int
    fibers: tuple[FiberComponent, ...]

    @property
    def signature(self) -> str:
        return fiber_signature(self.fibers)


def fiber_signature(fibers: Sequence[FiberComponent]) -> str:
    if not fibers:
        return "∅"
    return " ".join(str(c) for c in fibers)


def _fiber_sort_key(c: FiberComponent):
    fam = {"E": 0, "D": 1, "A": 2}[c.ade[0]]
    return (fam, -int(c.ade[1:]), c.multiple)


def graph_components(vertices: Sequence[int]) -> list[tuple[str, list[int]]]:
    """Components of the graph on packed vectors with edges where ``b = 1``, typed by size."""
    verts = sorted(set(vertices))
    adj = {v: [w for w in verts if w != v and f2q.b(v, w)] for v in verts}
    lookup = ade_lookup_table()
    seen: set[int] = set()
    out = []
    for v in verts:
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        nedges = sum(len(adj[x]) for x in comp) // 2
        sym = lookup.get((len(comp), nedges))
        if sym is None:
            raise InternalConsistencyError(
                f"graph with {len(comp)} vertices and {nedges} edges is not an ADE graph")
        out.append((sym, sorted(comp)))
    return out


def graph_ade_type(vertices: Sequence[int]) -> AdeType:
    """ADE type read off the graph of mod-2 root classes (one class per positive root)."""
    return AdeType(tuple(sym for sym, _ in graph_components(vertices)))


def fiber_components(m: SurfaceModel, fbar: int) -> tuple[FiberComponent, ...]:
    """Reducible fibres of the fibration with half-fibre class ``fbar``.

    Vertices: classes of Delta-bar in ``fbar^perp / <fbar>``, edges where the
    polar form is 1.  Each component is typed by its (vertex, edge) count.
    """
    if fbar == 0 or f2q.q(fbar) != 0:
        raise PreconditionError("fbar must be a nonzero isotropic vector")
    perp = [r for r in sorted(m.deltabar) if f2q.b(r, fbar) == 0]
    if not perp:
        return ()
    classes: dict[int, list[int]] = {}
    for r in perp:
        classes.setdefault(min(r, r ^ fbar), []).append(r)
    out = []
    for sym, comp in graph_components(sorted(classes)):
        pre = [r for x in comp for r in classes[x]]
        out.append(FiberComponent(sym, f2q.member(f2q.span(pre), fbar)))
    out.sort(key=_fiber_sort_key)
    if sum(int(c.ade[1:]) for c in out) > 8:
        raise InternalConsistencyError("fibre components exceed rank 8")
    return tuple(out)


def fibration_classes(m: SurfaceModel) -> list[FibrationClass]:
    iso = f2q.isotropic_vectors()
    perms = [g.perm for g in m.gbar_gens]
    seen: set[int] = set()
    out = []
    for x in iso:
        if x in seen:
            continue
        orb = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for p in frontier:
                for s in perms:
                    y = int(s[p])
                    if y not in orb:
                        orb.add(y)
                        nxt.append(y)
            frontier = nxt
        seen |= orb
        out.append(FibrationClass(x, len(orb), fiber_components(m, x)))
    if sum(c.weight for c in out) != ISOTROPIC_COUNT:
        raise InternalConsistencyError("fibration weights do not sum to 527")
    out.sort(key=lambda c: (c.signature, c.weight, c.fbar))
    return out


def group_fibrations(classes: Sequence[FibrationClass]) -> list[tuple[str, int, int]]:
    """Rows ``(fiber signature, weight, number of classes)``."""
    counts: dict[tuple[str, int], int] = {}
    for c in classes:
        counts[(c.signature, c.weight)] = counts.get((c.signature, c.weight), 0) + 1
    return [(sig, w, n) for (sig, w), n in sorted(counts.items())]


def volume_index(m: SurfaceModel) -> int:
    """``[O(E10 (x) F2) : G_Y]``: chamber volume in units of the Vinberg chamber."""
    q, rem = divmod(groups.full_group_order(), m.gbar_chain.order())
    if rem:
        raise InternalConsistencyError("Vinberg group order does not divide the full order")
    return q


# M_R model ------------------------------------------------------------------


@dataclass(frozen=True)
class MRModel:
    """Lattice generated by E10 (scaled by 2) and the glue vectors (v, v)/2."""

    rank: int
    gram: tuple[tuple[int, ...], ...]
    sminus_basis: tuple[Vec, ...]
    glue_roots: tuple[Vec, ...]

    @cached_property
    def split_classes(self) -> frozenset[int]:
        """Mod-2 classes ``rbar`` with ``(rbar, 0) = w mod 2`` for some ``w in S_-``, ``w^2 = -4``."""
        if not self.sminus_basis:
            return frozenset()
        S = Sublattice(GramLattice(self.gram), self.sminus_basis)
        out = set()
        for c in short_vectors(S.lattice(), -4):
            w = S.to_ambient(c)
            if all(x % 2 == 0 for x in w[e10.RANK:]):
                out.add(f2q.from_bits([x % 2 for x in w[: e10.RANK]]))
        return frozenset(out)


def build_mr(m: SurfaceModel) -> MRModel:
    vs = list(m.r_basis)
    n = e10.RANK + len(vs)
    g = [[0] * n for _ in range(n)]
    for i in range(e10.RANK):
        for k in range(e10.RANK):
            g[i][k] = 2 * int(e10.GRAM[i, k])
        for j, v in enumerate(vs):
            g[i][e10.RANK + j] = g[e10.RANK + j][i] = e10.inner(e10.unit(i + 1), v)
    for j, v in enumerate(vs):
        for l, w in enumerate(vs):
            g[e10.RANK + j][e10.RANK + l] = e10.inner(v, w)
    gram = tuple(tuple(row) for row in g)
    GramLattice(gram)  # validates: symmetric, even, nondegenerate
    sminus: tuple[Vec, ...] = ()
    if vs:
        sminus = tuple(hermite_rows(integer_kernel([gram[i] for i in range(e10.RANK)])))
        S = Sublattice(GramLattice(gram), sminus)
        if not is_negative_definite(S.lattice()):
            raise InternalConsistencyError("S_- is not negative definite")
        if short_vectors(S.lattice(), -2):
            raise InternalConsistencyError("S_- contains a root")
    return MRModel(n, gram, sminus, tuple(vs))


def splitting_test(mr: MRModel, r: Sequence[int]) -> bool:
    """Is there ``w in S_-`` with ``w^2 = -4`` and ``((r, 0) + w)/2 in M_R``?"""
    if e10.norm(r) != -2:
        raise PreconditionError(f"{tuple(r)} is not a root")
    return e10.mod2_vec(r) in mr.split_classes


def bounded_roots(bound: int) -> np.ndarray:
    """All roots of E10 with every coordinate in ``[-bound, bound]`` (int8 rows).

    Meet in the middle across the only edge (5-6) joining the halves
    ``e1..e5`` and ``e6..e10``.
    """
    vals = np.arange(-bound, bound + 1, dtype=np.int64)
    half = np.array(np.meshgrid(*[vals] * 5, indexing="ij")).reshape(5, -1).T
    g = e10.GRAM.astype(np.int64)
    left = half
    right = half
    nl = np.einsum("ni,ij,nj->n", left, g[:5, :5], left)
    nr = np.einsum("ni,ij,nj->n", right, g[5:, 5:], right)
    out = []
    for x5 in vals:
        lsel = left[:, 4] == x5
        for x6 in vals:
            rsel = right[:, 0] == x6
            lv, rv = left[lsel], right[rsel]
            ln, rn = nl[lsel], nr[rsel]
            target = -2 - 2 * x5 * x6
            order = np.argsort(rn, kind="stable")
            rn_sorted = rn[order]
            for val in np.unique(ln):
                want = target - val
                lo = np.searchsorted(rn_sorted, want, "left")
                hi = np.searchsorted(rn_sorted, want, "right")
                if lo == hi:
                    continue
                ls = lv[ln == val]
                rs = rv[order[lo:hi]]
                block = np.concatenate(
                    [np.repeat(ls, len(rs), axis=0), np.tile(rs, (len(ls), 1))], axis=1)
                out.append(block.astype(np.int8))
    return np.concatenate(out) if out else np.zeros((0, 10), dtype=np.int8)


def pack_mod2(vectors: np.ndarray) -> np.ndarray:
    """Packed mod-2 reductions of the rows of an integer array."""
    bits = (np.asarray(vectors, dtype=np.int64) & 1).astype(np.int64)
    return (bits << np.arange(e10.RANK)).sum(axis=1)


def random_root_sublattice(rng, max_rank: int = 8, word_length: int = 20) -> list[Vec]:
    """Simple roots of a random definite root sublattice, moved by a random Weyl word.

    A random subset of the simple roots spanning a negative definite lattice
    (retried until it does) is pushed through ``word_length`` random simple
    reflections.
    """
    while True:
        k = int(rng.integers(1, max_rank + 1))
        labels = sorted(int(i) + 1 for i in rng.choice(e10.RANK, size=k, replace=False))
        sub = [e10.unit(i) for i in labels]
        if is_negative_definite(GramLattice(tuple(tuple(e10.inner(x, y) for y in sub) for x in sub))):
            break
    word = [int(i) for i in rng.integers(1, e10.RANK + 1, size=word_length)]
    return [e10.apply_word(word, r) for r in sub]
