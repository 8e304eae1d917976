"""Orbits of vectors h in E10: phi-invariant, stabilizer images mod 2, the
forgetful-map degrees, and per-surface orbit tables with ramification degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels, e10, enriques, f2q, groups
from .intlattice import (
    AdeType,
    InternalConsistencyError,
    PreconditionError,
    Sublattice,
    ade_recognize,
    short_vectors,
    short_vectors_in_coset,
    solve_q,
)

Vec = tuple[int, ...]

# (h^2, phi) -> index of the stabilizer image; phi is None for h^2 = 0
STABILIZER_INDICES: dict[tuple[int, int | None], int] = {
    (0, None): 17 * 31,
    (2, 1): 2**7 * 17 * 31,
    (4, 1): 2**8 * 17 * 31,
    (4, 2): 2**6 * 3 * 5 * 17 * 31,
    (6, 1): 2**8 * 17 * 31,
    (6, 2): 2**10 * 5 * 17 * 31,
    (8, 1): 2**8 * 17 * 31,
    (8, 2): 2**7 * 3**3 * 5 * 17 * 31,
    (10, 1): 2**8 * 17 * 31,
    (10, 2): 2**10 * 3 * 5 * 17 * 31,
    (10, 3): 2**13 * 3 * 17 * 31,
}


class NotFound(LookupError):
    pass


def _gcd(v: Sequence[int]) -> int:
    g = 0
    for c in v:
        g = math.gcd(g, int(c))
    return g


def _dual_vector(h: Sequence[int]) -> Vec:
    """Some ``w`` with ``w . h = 1`` (``h`` primitive, E10 unimodular)."""
    a = e10.chamber_coords(h)  # w . h = sum(w_i a_i)
    w = [0] * e10.RANK
    g = 0
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        if g == 0:
            g = ai
            w[i] = 1
            continue
        # extended gcd of g and ai
        old_r, r, old_s, s, old_t, t = g, ai, 1, 0, 0, 1
        while r:
            qt = old_r // r
            old_r, r = r, old_r - qt * r
            old_s, s = s, old_s - qt * s
            old_t, t = t, old_t - qt * t
        w = [c * old_s for c in w]
        w[i] += old_t
        g = old_r
    if g < 0:
        w = [-c for c in w]
        g = -g
    if g != 1:
        raise PreconditionError("h is not primitive")
    return tuple(w)


def _complement(h: Vec) -> Sublattice:
    return Sublattice(e10.LATTICE, tuple(e10.orthogonal_complement(h)))


def phi_invariant(h: Sequence[int]) -> int:
    """``min h.f`` over nonzero isotropic ``f``, for ``h^2 > 0``."""
    h = tuple(int(c) for c in h)
    hsq = e10.norm(h)
    if hsq <= 0 or e10.inner(h, e10.weyl_vector()) <= 0:
        raise PreconditionError("h must lie in the positive cone")
    g = _gcd(h)
    if g > 1:
        return g * phi_invariant(tuple(c // g for c in h))
    w = _dual_vector(h)
    K = _complement(h)
    KL = K.lattice()
    kgram = [list(r) for r in K.gram()]
    f0 = e10.dual_basis()[0]  # isotropic, in the closed positive cone
    bound = e10.inner(h, f0)
    for c in range(1, bound + 1):
        # c*w = (c/h^2) h + t with t in h^perp (x) Q; express t in the basis of K
        t = [Fraction(c * wi) - Fraction(c, hsq) * hi for wi, hi in zip(w, h)]
        rhs = [e10.inner(k, t) for k in K.basis]
        z = solve_q(kgram, rhs)
        if short_vectors_in_coset(KL, z, Fraction(-c * c, hsq)):
            return c
    raise InternalConsistencyError(f"no isotropic vector found below the bound {bound}")


def _chamber_vectors(hsq: int, box: int):
    """Chamber coordinates ``a >= 0`` with ``max(a) = box`` and norm ``hsq``, lexicographic."""
    gi = np.array(e10._inverse_gram(), dtype=np.int64)
    n = e10.RANK

    def rec(i, a, partial):
        if partial > hsq:
            return
        if i == n:
            if partial == hsq and max(a) == box:
                yield tuple(a)
            return
        for x in range(box + 1):
            # all entries of the inverse Gram are >= 0, so partial norms only grow
            add = x * x * gi[i, i] + 2 * x * sum(int(gi[i, j]) * a[j] for j in range(i))
            if partial + add > hsq:
                break
            yield from rec(i + 1, a + [x], partial + add)

    yield from rec(0, [], 0)


@lru_cache(maxsize=None)
def find_h(hsq: int, phi: int | None = None, cap: int = 8) -> Vec:
    """Primitive ``h`` in the closed fundamental chamber with ``h^2 = hsq`` and given phi.

    Searches chamber coordinates ``a = G h >= 0`` by increasing box size; every
    orbit of vectors in the positive cone meets the closed chamber exactly once.
    """
    if hsq < 0 or hsq % 2:
        raise PreconditionError("h^2 must be a non-negative even integer")
    if hsq == 0:
        return e10.from_chamber_coords((1,) + (0,) * (e10.RANK - 1))
    if phi is None or phi < 1:
        raise PreconditionError("phi must be a positive integer when h^2 > 0")
    for box in range(1, cap + 1):
        for a in _chamber_vectors(hsq, box):
            if _gcd(a) != 1:
                continue
            h = e10.from_chamber_coords(a)
            if phi_invariant(h) == phi:
                return h
    raise NotFound(f"no primitive h with h^2 = {hsq}, phi = {phi} in chamber box {cap}")


def roots_orthogonal(h: Sequence[int]) -> list[Vec]:
    """All roots of the definite lattice ``h^perp`` (``h^2 > 0``), in E10 coordinates."""
    K = _complement(tuple(h))
    return sorted(K.to_ambient(c) for c in short_vectors(K.lattice(), -2))


def stab_image(h: Sequence[int]) -> list[groups.GroupElem]:
    """Generators (with lifts) of the image of ``O(E10, h)`` in ``O(E10 (x) F2)``."""
    h = tuple(int(c) for c in h)
    if _gcd(h) != 1:
        raise PreconditionError("h must be primitive")
    hsq = e10.norm(h)
    if hsq < 0 or e10.inner(h, e10.weyl_vector()) <= 0:
        raise PreconditionError("h must lie in the closed positive cone")
    if hsq == 0:
        return groups.stabilizer(groups.simple_generators(), e10.mod2_vec(h), groups.full_group_order())
    gens = {}
    for r in roots_orthogonal(h):
        key = e10.mod2_vec(r)
        if key not in gens:
            gens[key] = groups.GroupElem.from_root(r)
    return [gens[k] for k in sorted(gens)]


def stab_index(h: Sequence[int]) -> int:
    q, rem = divmod(groups.full_group_order(), groups.bsgs(stab_image(h)).order())
    if rem:
        raise InternalConsistencyError("stabilizer order does not divide the group order")
    return q


@dataclass(frozen=True)
class Table1Row:
    hsq: int
    phi: int | None
    h: Vec
    index: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.index == self.expected


def table1() -> list[Table1Row]:
    rows = []
    for (hsq, phi), expected in STABILIZER_INDICES.items():
        h = find_h(hsq, phi)
        rows.append(Table1Row(hsq, phi, h, stab_index(h), expected))
    return rows


# orbit tables --------------------------------------------------------------


@dataclass(frozen=True)
class PolarizationOrbit:
    h_prime: Vec
    singularities: str
    r: int
    orbit_count: int = 1


@dataclass
class PolarizationResult:
    model: enriques.SurfaceModel
    h: Vec
    index: int
    space: groups.CosetSpace
    singularity_of_rep: list[str]  # parallel to space.reps
    rank_of_rep: list[int]

    def weighted_sum(self) -> int:
        return int(self.space.sizes.sum())

    def _h_prime(self, k: int) -> Vec:
        elem = self.space.element(int(self.space.reps[k]))
        hp = elem.apply_lift(self.h)
        if e10.mod2_vec(hp) != elem(e10.mod2_vec(self.h)):
            raise InternalConsistencyError("lift of a coset representative disagrees mod 2")
        return hp

    def grouped(self) -> list[PolarizationOrbit]:
        first: dict[tuple[str, int], int] = {}
        counts: dict[tuple[str, int], int] = {}
        for k, (sing, r) in enumerate(zip(self.singularity_of_rep, self.space.sizes.tolist())):
            key = (sing, r)
            counts[key] = counts.get(key, 0) + 1
            first.setdefault(key, k)
        rank = dict(zip(self.singularity_of_rep, self.rank_of_rep))
        keys = sorted(counts, key=lambda key: (rank[key[0]], key[0], key[1]))
        return [PolarizationOrbit(self._h_prime(first[key]), key[0], key[1], counts[key]) for key in keys]

    def ungrouped(self, limit: int | None = None) -> list[PolarizationOrbit]:
        n = len(self.space) if limit is None else min(limit, len(self.space))
        sizes = self.space.sizes
        return [PolarizationOrbit(self._h_prime(k), self.singularity_of_rep[k], int(sizes[k]))
                for k in range(n)]


def _fiber_rank(sig: str) -> int:
    if sig == "∅":
        return 0
    return sum(int(c.rstrip("*")[1:]) for c in sig.split())


SINGULARITY_MODES = ("mod2", "lattice")


def polarization_orbits(m: enriques.SurfaceModel, h: Sequence[int],
                        budget: int = 20_000_000, singularities: str = "mod2") -> PolarizationResult:
    """Double cosets ``G_Y \\ O(E10 (x) F2) / A`` for ``A`` the stabilizer image of ``h``.

    Singularities of ``h' = d(h)`` (``h^2 > 0``):

    * ``mod2``: the graph on the classes of Delta-bar orthogonal to ``h'`` mod 2,
      typed by vertex and edge counts (this is how the reference orbit tables
      are organised);
    * ``lattice``: roots ``s`` of ``h'^perp`` with ``sbar`` in Delta-bar.  These
      are ``d`` applied to the roots ``r`` of ``h^perp`` with ``d(rbar)`` in
      Delta-bar, so only the mod-2 action of ``d`` is needed.

    For ``h^2 = 0`` the reducible fibres of the fibration ``h'`` are reported.
    """
    if singularities not in SINGULARITY_MODES:
        raise PreconditionError(f"unknown singularity mode {singularities!r}")
    h = tuple(int(c) for c in h)
    A = groups.bsgs(stab_image(h))
    space = groups.CosetSpace(groups.simple_generators(), A, m.gbar_gens,
                              group_order=groups.full_group_order(), budget=budget)
    reps = space.reps.astype(np.int64)
    hbar = e10.mod2_vec(h)
    images = _kernels.image_of_point(reps, space.keys0, space.keys1, hbar)
    sing: list[str] = []
    ranks: list[int] = []
    if e10.norm(h) == 0 or singularities == "mod2":
        cache: dict[int, tuple[str, int]] = {}
        for x in np.unique(images).tolist():
            if e10.norm(h) == 0:
                sig = enriques.fiber_signature(enriques.fiber_components(m, x))
                cache[x] = (sig, _fiber_rank(sig))
            else:
                t = mod2_singularities(m, x)
                cache[x] = (str(t), t.rank)
        for x in images.tolist():
            sig, rk = cache[x]
            sing.append(sig)
            ranks.append(rk)
    else:
        roots = roots_orthogonal(h)
        classes = sorted({e10.mod2_vec(r) for r in roots})
        by_class = {c: [r for r in roots if e10.mod2_vec(r) == c] for c in classes}
        masks = _kernels.class_masks(reps, space.keys0, space.keys1,
                                     np.array(classes, dtype=np.int64), m.delta_table)
        uniq, inverse = np.unique(masks, axis=0, return_inverse=True)
        types = []
        for row in uniq:
            sel = [r for c, bit in zip(classes, row) if bit for r in by_class[c]]
            types.append(ade_recognize(sel, e10.LATTICE))
        if any(t.rank > 9 for t in types):
            raise InternalConsistencyError("singularity rank exceeds 9")
        inverse = np.asarray(inverse).reshape(-1)
        sing = [str(types[j]) for j in inverse]
        ranks = [types[j].rank for j in inverse]
    res = PolarizationResult(m, h, space.index, space, sing, ranks)
    if res.weighted_sum() != space.index:
        raise InternalConsistencyError("ramification degrees do not sum to the index")
    return res


def mod2_singularities(m: enriques.SurfaceModel, hbar: int) -> AdeType:
    """Type of the graph on ``{x in Delta-bar : b(x, hbar) = 0}``."""
    return enriques.graph_ade_type([x for x in m.deltabar if f2q.b(x, hbar) == 0])


def singularities_direct(m: enriques.SurfaceModel, h_prime: Sequence[int]) -> AdeType:
    """Lattice-mode singularities of ``h'`` from scratch: roots of ``h'^perp`` in Delta-bar."""
    sel = [r for r in roots_orthogonal(h_prime) if e10.mod2_vec(r) in m.deltabar]
    return ade_recognize(sel, e10.LATTICE)
