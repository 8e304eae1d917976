"""The quadratic space E10 (x) F2.

Vectors are packed into ints: bit ``i`` is the coefficient of the simple root
``e_{i+1}``.  Matrices act on column vectors and are stored as ten packed rows,
so ``M(x)`` has bit ``i`` equal to the parity of ``rows[i] & x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

DIM = 10
NPOINTS = 1 << DIM

# E10 adjacency (labels 1..10 -> bits 0..9): chain 1-9, node 10 on node 7.
_EDGES = [(i, i + 1) for i in range(8)] + [(6, 9)]


def _polar_rows() -> tuple[int, ...]:
    rows = [0] * DIM
    for i, j in _EDGES:
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return tuple(rows)


POLAR_ROWS = _polar_rows()


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@lru_cache(maxsize=None)
def _q_table() -> np.ndarray:
    # lift x to a 0/1 vector: x^2 = -2*wt(x) + 2*#edges inside x
    table = np.zeros(NPOINTS, dtype=np.uint8)
    for x in range(NPOINTS):
        half_norm = -bin(x).count("1") + sum(1 for i, j in _EDGES if (x >> i) & 1 and (x >> j) & 1)
        table[x] = half_norm % 2
    table.flags.writeable = False
    return table


def q(x: int) -> int:
    """Quadratic form ``x^2/2 mod 2`` of the 0/1 lift of ``x``."""
    return int(_q_table()[x])


def polar(y: int) -> int:
    """Packed vector ``p`` with ``b(x, y) = parity(x & p)``."""
    p = 0
    i = 0
    while y:
        if y & 1:
            p ^= POLAR_ROWS[i]
        y >>= 1
        i += 1
    return p


def b(x: int, y: int) -> int:
    """Polar (bilinear) form of ``q``: the lifted inner product mod 2."""
    return _parity(x & polar(y))


def isotropic_vectors() -> list[int]:
    """All nonzero ``x`` with ``q(x) = 0``, ascending."""
    t = _q_table()
    return [x for x in range(1, NPOINTS) if t[x] == 0]


def anisotropic_vectors() -> list[int]:
    t = _q_table()
    return [x for x in range(1, NPOINTS) if t[x] == 1]


def unit(i: int) -> int:
    """Packed image of the simple root ``e_i`` (1-based label)."""
    return 1 << (i - 1)


def from_bits(bits: Sequence[int]) -> int:
    x = 0
    for i, c in enumerate(bits):
        if int(c) % 2:
            x |= 1 << i
    return x


def to_bits(x: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(DIM))


@dataclass(frozen=True)
class F2Mat:
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != DIM:
            raise ValueError(f"expected {DIM} rows, got {len(self.rows)}")

    @classmethod
    def identity(cls) -> "F2Mat":
        return cls(tuple(1 << i for i in range(DIM)))

    @classmethod
    def from_columns(cls, cols: Sequence[int]) -> "F2Mat":
        rows = [0] * DIM
        for j, c in enumerate(cols):
            for i in range(DIM):
                if (int(c) >> i) & 1:
                    rows[i] |= 1 << j
        return cls(tuple(rows))

    @classmethod
    def from_perm(cls, perm: np.ndarray) -> "F2Mat":
        return cls.from_columns([int(perm[1 << j]) for j in range(DIM)])

    @classmethod
    def from_int_matrix(cls, m) -> "F2Mat":
        """Reduce an integer matrix (acting on column vectors) mod 2."""
        m = np.asarray(m)
        return cls(tuple(from_bits(m[i]) for i in range(DIM)))

    def __call__(self, x: int) -> int:
        y = 0
        for i, r in enumerate(self.rows):
            y |= _parity(r & x) << i
        return y

    def columns(self) -> tuple[int, ...]:
        return tuple(self(1 << j) for j in range(DIM))

    def __matmul__(self, other: "F2Mat") -> "F2Mat":
        return F2Mat.from_columns([self(c) for c in other.columns()])

    def transpose(self) -> "F2Mat":
        return F2Mat(self.columns())

    def to_perm(self) -> np.ndarray:
        """Action on all 1024 packed vectors as a ``uint16`` lookup table."""
        xs = np.arange(NPOINTS, dtype=np.uint16)
        out = np.zeros(NPOINTS, dtype=np.uint16)
        for j, c in enumerate(self.columns()):
            out ^= ((xs >> j) & 1) * np.uint16(c)
        return out

    def is_isometry(self) -> bool:
        """Exhaustive check of ``q(Mx) = q(x)`` plus invertibility."""
        perm = self.to_perm()
        t = _q_table()
        return bool(np.array_equal(t[perm], t)) and len(np.unique(perm)) == NPOINTS


def transvection(r: int) -> F2Mat:
    """Matrix of ``x -> x + b(x, r) r`` for an anisotropic ``r``."""
    if q(r) != 1:
        raise ValueError(f"transvection needs q(r) = 1, got q({r}) = {q(r)}")
    return F2Mat.from_columns([(1 << j) ^ (r if b(1 << j, r) else 0) for j in range(DIM)])


@dataclass(frozen=True)
class F2Subspace:
    """Subspace with its reduced row echelon basis (pivot = highest bit)."""

    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, x: int) -> bool:
        return member(self, x)


def _reduce(x: int, basis: Iterable[int]) -> int:
    for v in basis:
        if x & (1 << (v.bit_length() - 1)):
            x ^= v
    return x


def span(vectors: Iterable[int]) -> F2Subspace:
    basis: list[int] = []
    for x in vectors:
        x = _reduce(x, basis)
        if not x:
            continue
        top = 1 << (x.bit_length() - 1)
        basis = [v ^ x if v & top else v for v in basis]
        basis.append(x)
        basis.sort(reverse=True)
    return F2Subspace(tuple(basis))


def member(S: F2Subspace, x: int) -> bool:
    return _reduce(x, S.basis) == 0


def rank(vectors: Iterable[int]) -> int:
    return span(vectors).dim
