"""Permutation-group machinery for subgroups of O(E10 (x) F2).

Every group element acts on the 1024 packed vectors; internally it is a
``uint16`` lookup table ``p`` with ``p[x] = g(x)``, and ``(p o s)[x] =
p[s[x]]``.  Group elements that must be lifted back to E10 carry a word of
roots: the word ``(r1, ..., rk)`` stands for ``s_r1 o ... o s_rk``, whose
reduction mod 2 is the product of the transvections in ``r1 .. rk``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

import numpy as np

from . import e10, f2q
from .intlattice import InternalConsistencyError

IDENTITY = np.arange(f2q.NPOINTS, dtype=np.uint16)
IDENTITY.flags.writeable = False


class BudgetExceeded(RuntimeError):
    """Coset space larger than the configured budget."""

    def __init__(self, index: int, budget: int):
        super().__init__(f"coset space has index {index}, above the budget of {budget}")
        self.index = index
        self.budget = budget


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Permutation ``a o b`` (``b`` acts first)."""
    return a[b]


def inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = IDENTITY
    return inv


def is_identity(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, IDENTITY))


@dataclass(frozen=True, eq=False)
class GroupElem:
    """An isometry mod 2 with the word of E10 roots that lifts it (or ``None``)."""

    mat: f2q.F2Mat
    word: tuple[tuple[int, ...], ...] | None = ()

    @classmethod
    def identity(cls) -> "GroupElem":
        return cls(f2q.F2Mat.identity(), ())

    @classmethod
    def from_root(cls, r: Sequence[int]) -> "GroupElem":
        r = tuple(int(c) for c in r)
        return cls(f2q.transvection(e10.mod2_vec(r)), (r,))

    @classmethod
    def from_perm(cls, perm: np.ndarray, word=None) -> "GroupElem":
        return cls(f2q.F2Mat.from_perm(perm), word)

    @cached_property
    def perm(self) -> np.ndarray:
        p = self.mat.to_perm()
        p.flags.writeable = False
        return p

    def __call__(self, x: int) -> int:
        return int(self.perm[x])

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        word = None if self.word is None or other.word is None else self.word + other.word
        return GroupElem(self.mat @ other.mat, word)

    def inverse(self) -> "GroupElem":
        # every letter is a reflection, hence an involution
        word = None if self.word is None else tuple(reversed(self.word))
        return GroupElem.from_perm(inverse(self.perm), word)

    def lift(self) -> np.ndarray:
        """Integral matrix of the word (object dtype, exact)."""
        if self.word is None:
            raise ValueError("element carries no word")
        m = np.eye(e10.RANK, dtype=object)
        for r in self.word:
            m = m.dot(e10.reflection_matrix(r).astype(object))
        return m

    def apply_lift(self, x: Sequence[int]) -> tuple[int, ...]:
        y = tuple(int(c) for c in x)
        for r in reversed(self.word or ()):
            y = e10.reflect(r, y)
        return y

    def is_coherent(self) -> bool:
        """Word and matrix agree, and the lift is an E10 isometry."""
        if self.word is None:
            return True
        m = self.lift()
        return e10.preserves_gram(m) and e10.mod2_matrix(m) == self.mat


def simple_generators() -> list[GroupElem]:
    """The ten simple transvections, lifted by the simple reflections."""
    return [GroupElem.from_root(e10.unit(i)) for i in range(1, e10.RANK + 1)]


# orbits ---------------------------------------------------------------------


@dataclass
class Orbit:
    """BFS orbit of ``root`` with a Schreier tree over ``gens``."""

    root: int
    gens: list[GroupElem]
    points: list[int]
    parent: dict[int, tuple[int, int]]  # point -> (previous point, generator index)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, x: int) -> bool:
        return x in self.parent

    def letters(self, x: int) -> list[int]:
        """Generator indices ``[g1, ..., gk]`` with ``g1 o ... o gk (root) = x``."""
        out = []
        while x != self.root:
            x, g = self.parent[x]
            out.append(g)
        return out

    def element(self, x: int) -> GroupElem:
        """A group element mapping ``root`` to ``x``, with its word."""
        g = GroupElem.identity()
        for i in self.letters(x):
            g = g * self.gens[i]
        return g


def orbit(gens: Sequence[GroupElem], x: int) -> Orbit:
    gens = list(gens)
    perms = [g.perm for g in gens]
    parent: dict[int, tuple[int, int]] = {x: (x, -1)}
    points = [x]
    queue = deque([x])
    while queue:
        p = queue.popleft()
        for i, s in enumerate(perms):
            y = int(s[p])
            if y not in parent:
                parent[y] = (p, i)
                points.append(y)
                queue.append(y)
    return Orbit(x, gens, points, parent)


# stabilizer chains ---------------------------------------------------------


@dataclass
class _Level:
    base: int
    gens: list[np.ndarray]
    orbit: list[int] = field(default_factory=list)
    trans: dict[int, np.ndarray] = field(default_factory=dict)  # p -> u_p with u_p(base) = p
    checked: set = field(default_factory=set)

    def extend_orbit(self) -> None:
        if not self.trans:
            self.trans[self.base] = IDENTITY
            self.orbit.append(self.base)
        queue = deque(self.orbit)
        while queue:
            p = queue.popleft()
            up = self.trans[p]
            for s in self.gens:
                y = int(s[p])
                if y not in self.trans:
                    self.trans[y] = compose(s, up)
                    self.orbit.append(y)
                    queue.append(y)


_ISOTROPIC = None


def _choose_base_point(perm: np.ndarray, avoid: set[int]) -> int:
    global _ISOTROPIC
    if _ISOTROPIC is None:
        _ISOTROPIC = f2q.isotropic_vectors()
    for x in _ISOTROPIC:
        if perm[x] != x and x not in avoid:
            return x
    for x in range(1, f2q.NPOINTS):
        if perm[x] != x and x not in avoid:
            return x
    raise InternalConsistencyError("identity passed as a new strong generator")


class StabChain:
    """Base and strong generating set, built by deterministic Schreier-Sims."""

    def __init__(self, gens: Iterable = ()):
        self.levels: list[_Level] = []
        self.add_generators(gens)

    # construction
    def add_generators(self, gens: Iterable) -> None:
        for g in gens:
            perm = g.perm if isinstance(g, GroupElem) else np.asarray(g, dtype=np.uint16)
            residue, depth = self.sift(perm)
            if depth == len(self.levels) and is_identity(residue):
                continue
            self._add_strong(perm, 0)
            self._complete()

    def _add_strong(self, perm: np.ndarray, upto: int) -> None:
        # perm fixes the base points of levels < upto
        lvl = upto
        while lvl < len(self.levels) and perm[self.levels[lvl].base] == self.levels[lvl].base:
            self.levels[lvl].gens.append(perm)
            lvl += 1
        if lvl == len(self.levels):
            avoid = {L.base for L in self.levels}
            self.levels.append(_Level(_choose_base_point(perm, avoid), []))
        self.levels[lvl].gens.append(perm)
        for i in range(upto, lvl + 1):
            self.levels[i].extend_orbit()

    def _complete(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            lev = self.levels[i]
            restart = None
            for p in list(lev.orbit):
                up = lev.trans[p]
                for k, s in enumerate(lev.gens):
                    if (p, k) in lev.checked:
                        continue
                    lev.checked.add((p, k))
                    y = int(s[p])
                    sg = compose(inverse(lev.trans[y]), compose(s, up))
                    residue, depth = self.sift(sg, start=i + 1)
                    if depth < len(self.levels) or not is_identity(residue):
                        self._add_strong(residue, i + 1)
                        restart = len(self.levels) - 1
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1

    # queries
    @property
    def base(self) -> list[int]:
        return [L.base for L in self.levels]

    @property
    def strong_generators(self) -> list[np.ndarray]:
        return self.levels[0].gens if self.levels else []

    def orbit_sizes(self) -> list[int]:
        return [len(L.orbit) for L in self.levels]

    def order(self) -> int:
        return prod(self.orbit_sizes())

    def sift(self, perm: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Strip ``perm`` through the chain; returns (residue, level reached)."""
        g = perm
        for i in range(start, len(self.levels)):
            L = self.levels[i]
            p = int(g[L.base])
            u = L.trans.get(p)
            if u is None:
                return g, i
            g = compose(inverse(u), g)
        return g, len(self.levels)

    def contains(self, g) -> bool:
        perm = g.perm if isinstance(g, GroupElem) else (g.to_perm() if isinstance(g, f2q.F2Mat) else g)
        residue, depth = self.sift(np.asarray(perm))
        return depth == len(self.levels) and is_identity(residue)

    def elements(self) -> Iterable[np.ndarray]:
        """All elements (only sensible for small groups)."""

        def rec(i, acc):
            if i < 0:
                yield acc
                return
            for p in self.levels[i].orbit:
                yield from rec(i - 1, compose(self.levels[i].trans[p], acc))

        yield from rec(len(self.levels) - 1, IDENTITY)

    def random_element(self, rng) -> np.ndarray:
        g = IDENTITY
        for L in reversed(self.levels):
            p = L.orbit[int(rng.integers(len(L.orbit)))]
            g = compose(L.trans[p], g)
        return g


def bsgs(gens: Iterable) -> StabChain:
    return StabChain(gens)


def order(chain: StabChain) -> int:
    return chain.order()


def is_member(chain: StabChain, m) -> bool:
    return chain.contains(m)


def stabilizer(gens: Sequence[GroupElem], x: int, group_order: int | None = None) -> list[GroupElem]:
    """Generators of ``Stab(x)`` in ``<gens>``, as words in ``gens``.

    Schreier generators ``u_{s(p)}^-1 s u_p`` of the orbit tree are added until
    the orbit-stabilizer identity closes (or all have been tried).
    """
    gens = list(gens)
    if group_order is None:
        group_order = bsgs(gens).order()
    orb = orbit(gens, x)
    target, rem = divmod(group_order, len(orb))
    if rem:
        raise InternalConsistencyError("orbit length does not divide the group order")
    chain = StabChain()
    out: list[GroupElem] = []
    for p in orb.points:
        up = orb.element(p)
        for s in gens:
            if chain.order() == target:
                return out
            y = s(p)
            sg = orb.element(y).inverse() * s * up
            if sg(x) != x:
                raise InternalConsistencyError("Schreier generator moves the point")
            if not chain.contains(sg.perm):
                chain.add_generators([sg.perm])
                out.append(sg)
    if chain.order() != target:
        raise InternalConsistencyError("stabilizer order does not match orbit length")
    return out


# cosets ---------------------------------------------------------------------

_SMALL = 4096


def _chain_arrays(chain: StabChain):
    nlev = len(chain.levels)
    maxo = max([len(L.orbit) for L in chain.levels], default=1)
    orb = np.zeros((nlev, maxo), dtype=np.int64)
    orblen = np.zeros(nlev, dtype=np.int64)
    ucols = np.zeros((nlev, f2q.NPOINTS, f2q.DIM), dtype=np.int64)
    units = np.array([1 << j for j in range(f2q.DIM)])
    for i, L in enumerate(chain.levels):
        orblen[i] = len(L.orbit)
        orb[i, : len(L.orbit)] = L.orbit
        for p, u in L.trans.items():
            ucols[i, p] = u[units]
    return orb, orblen, ucols


def _cols(g) -> np.ndarray:
    perm = g.perm if isinstance(g, GroupElem) else np.asarray(g)
    return perm[np.array([1 << j for j in range(f2q.DIM)])].astype(np.int64)


def _reference_points(chain: StabChain) -> list[int]:
    return chain.base + [1 << j for j in range(f2q.DIM)]


def canonical_coset_rep(A: StabChain, g) -> bytes:
    """CosetID of ``g A``: images of (base of A, unit vectors) under the least element.

    The least element minimises the image tuple of the base lexicographically;
    the unit vectors are appended so the ID determines the element.
    """
    from . import _kernels

    perm = g.perm if isinstance(g, GroupElem) else np.asarray(g)
    ref = np.array(_reference_points(A))
    if A.order() <= _SMALL:
        best = min((perm[a][ref].tolist() for a in A.elements()))
        return np.array(best, dtype="<u2").tobytes()
    orb, orblen, ucols = _chain_arrays(A)
    d = _kernels.canon_one(_cols(perm), orb, orblen, ucols)
    best_perm = f2q.F2Mat.from_columns([int(c) for c in d]).to_perm()
    return best_perm[ref].astype("<u2").tobytes()


@dataclass(frozen=True)
class DoubleCosetRecord:
    rep: GroupElem
    cosets_in_class: int
    class_size_check: int
    coset_id: bytes


class CosetSpace:
    """``G/A`` enumerated by BFS, split into orbits of ``B`` acting on the left."""

    def __init__(self, gens: Sequence[GroupElem], A: StabChain, B: Sequence[GroupElem],
                 group_order: int | None = None, budget: int = 20_000_000):
        from . import _kernels

        self.gens = list(gens)
        self.A = A
        self.B = list(B)
        if group_order is None:
            group_order = bsgs(self.gens).order()
        self.group_order = group_order
        self.index, rem = divmod(group_order, A.order())
        if rem:
            raise InternalConsistencyError("|A| does not divide |G|")
        if self.index > budget:
            raise BudgetExceeded(self.index, budget)
        gcols = np.array([_cols(g) for g in self.gens], dtype=np.int64).reshape(-1, f2q.DIM)
        gperms = [g.perm for g in self.gens]
        gunion = np.zeros(len(self.gens), dtype=np.bool_)
        extra = []
        for b in self.B:
            hit = [i for i, p in enumerate(gperms) if np.array_equal(p, b.perm)]
            if hit:
                gunion[hit[0]] = True
            else:
                extra.append(_cols(b))
        bcols = np.array(extra, dtype=np.int64).reshape(-1, f2q.DIM)
        orb, orblen, ucols = _chain_arrays(A)
        n = self.index
        self.keys0 = np.zeros(n, dtype=np.uint64)
        self.keys1 = np.zeros(n, dtype=np.uint64)
        self.parent = np.zeros(n, dtype=np.int32)
        self.pgen = np.zeros(n, dtype=np.int8)
        self.uf = np.zeros(n, dtype=np.int32)
        found = _kernels.enumerate_cosets(n, gcols, gunion, bcols, orb, orblen, ucols,
                                          self.keys0, self.keys1, self.parent, self.pgen, self.uf)
        if found != n:
            raise InternalConsistencyError(f"coset enumeration found {found} cosets, expected {n}")
        sizes = _kernels.orbit_sizes(self.uf)
        self.reps = np.flatnonzero(self.uf == np.arange(n, dtype=np.int32))
        self.sizes = sizes[self.reps]
        if int(self.sizes.sum()) != n:
            raise InternalConsistencyError("B-orbits do not partition the coset space")

    def __len__(self) -> int:
        return len(self.reps)

    def cols(self, i: int) -> list[int]:
        k0, k1 = int(self.keys0[i]), int(self.keys1[i])
        return [(k0 >> (10 * j)) & 1023 for j in range(6)] + [(k1 >> (10 * j)) & 1023 for j in range(4)]

    def letters(self, i: int) -> list[int]:
        out = []
        while self.parent[i] >= 0:
            out.append(int(self.pgen[i]))
            i = int(self.parent[i])
        return out

    def element(self, i: int) -> GroupElem:
        """Coset representative: the product of generators along the BFS path."""
        letters = self.letters(i)
        perm = IDENTITY
        for k in reversed(letters):
            perm = compose(self.gens[k].perm, perm)
        word = None
        if all(g.word is not None for g in self.gens):
            word = tuple(r for k in letters for r in self.gens[k].word)
        return GroupElem.from_perm(perm, word)

    def coset_id(self, i: int) -> bytes:
        perm = f2q.F2Mat.from_columns(self.cols(i)).to_perm()
        return perm[np.array(_reference_points(self.A))].astype("<u2").tobytes()

    def records(self) -> list[DoubleCosetRecord]:
        order_a = self.A.order()
        recs = [DoubleCosetRecord(self.element(int(i)), int(r), int(r) * order_a, self.coset_id(int(i)))
                for i, r in zip(self.reps, self.sizes)]
        recs.sort(key=lambda rec: (rec.cosets_in_class, rec.coset_id))
        return recs


def double_cosets(gens: Sequence[GroupElem], A: StabChain, B: Sequence[GroupElem],
                  budget: int = 20_000_000, group_order: int | None = None) -> list[DoubleCosetRecord]:
    return CosetSpace(gens, A, B, group_order=group_order, budget=budget).records()


def full_group_order_formula() -> int:
    """Order of the plus-type orthogonal group O+(10, 2), from the classical formula."""
    m = 5
    out = 2 * 2 ** (m * (m - 1)) * (2**m - 1)
    for i in range(1, m):
        out *= 2 ** (2 * i) - 1
    return out


_FULL_ORDER = None


def full_group_chain() -> StabChain:
    global _FULL_ORDER
    chain = bsgs(simple_generators())
    _FULL_ORDER = chain.order()
    return chain


def full_group_order() -> int:
    if _FULL_ORDER is None:
        full_group_chain()
    return _FULL_ORDER
