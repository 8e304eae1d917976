"""The even unimodular hyperbolic lattice E10 in a basis of simple roots.

Node labels are 1..10 (chain 1-9, node 10 attached to node 7); arrays are
0-based, so label ``i`` lives at index ``i - 1``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from . import f2q
from .intlattice import GramLattice, PreconditionError, solve_q

RANK = 10
NEG = 0  # letter for the global -1 in isometry words; 1..10 are simple reflections


def _gram() -> np.ndarray:
    g = np.zeros((RANK, RANK), dtype=np.int64)
    np.fill_diagonal(g, -2)
    for i in range(8):
        g[i, i + 1] = g[i + 1, i] = 1
    g[6, 9] = g[9, 6] = 1
    g.flags.writeable = False
    return g


GRAM = _gram()
LATTICE = GramLattice(GRAM.tolist())


def inner(x: Sequence[int], y: Sequence[int]) -> int:
    return LATTICE.inner(tuple(x), tuple(y))


def norm(x: Sequence[int]) -> int:
    return inner(x, x)


def unit(i: int) -> tuple[int, ...]:
    """Simple root ``e_i`` (1-based label)."""
    return tuple(int(j == i - 1) for j in range(RANK))


@lru_cache(maxsize=None)
def _inverse_gram() -> tuple[tuple[int, ...], ...]:
    cols = []
    for j in range(RANK):
        sol = solve_q(GRAM.tolist(), [int(i == j) for i in range(RANK)])
        if any(c.denominator != 1 for c in sol):
            raise AssertionError("E10 Gram matrix is not unimodular")
        cols.append([int(c) for c in sol])
    return tuple(tuple(cols[j][i] for j in range(RANK)) for i in range(RANK))


def dual_basis() -> list[tuple[int, ...]]:
    """``e_i^vee`` with ``e_i^vee . e_j = delta_ij``."""
    gi = _inverse_gram()
    return [tuple(gi[k][i] for k in range(RANK)) for i in range(RANK)]


def weyl_vector() -> tuple[int, ...]:
    """``v = sum e_i^vee``: pairs to 1 with every simple root."""
    return tuple(sum(col) for col in zip(*dual_basis()))


def from_chamber_coords(a: Sequence[int]) -> tuple[int, ...]:
    """Vector with ``x . e_i = a_i``."""
    gi = _inverse_gram()
    return tuple(sum(gi[k][i] * a[i] for i in range(RANK)) for k in range(RANK))


def chamber_coords(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(c) for c in GRAM @ np.asarray(x, dtype=np.int64))


def reflect(r: Sequence[int], x: Sequence[int]) -> tuple[int, ...]:
    """``s_r(x) = x + (r.x) r`` for a root ``r``."""
    if norm(r) != -2:
        raise PreconditionError(f"{tuple(r)} is not a root")
    c = inner(r, x)
    return tuple(xi + c * ri for xi, ri in zip(x, r))


def reflection_matrix(r: Sequence[int]) -> np.ndarray:
    """Integer matrix of ``s_r`` acting on column coordinate vectors."""
    if norm(r) != -2:
        raise PreconditionError(f"{tuple(r)} is not a root")
    r = np.asarray(r, dtype=np.int64)
    return np.eye(RANK, dtype=np.int64) + np.outer(r, r @ GRAM)


def simple_reflection(i: int) -> np.ndarray:
    return reflection_matrix(unit(i))


def word_matrix(word: Sequence[int]) -> np.ndarray:
    """Integer matrix of the composition ``w_1 o w_2 o ... o w_k``."""
    m = np.eye(RANK, dtype=object)
    for letter in word:
        g = -np.eye(RANK, dtype=np.int64) if letter == NEG else simple_reflection(letter)
        m = m.dot(g.astype(object))
    return m


def apply_word(word: Sequence[int], x: Sequence[int]) -> tuple[int, ...]:
    """Image of ``x`` under ``w_1 o ... o w_k`` (rightmost letter acts first)."""
    y = tuple(int(c) for c in x)
    for letter in reversed(word):
        y = tuple(-c for c in y) if letter == NEG else reflect(unit(letter), y)
    return y


def in_positive_cone(x: Sequence[int], closed: bool = True) -> bool:
    n = norm(x)
    if any(x) is False:
        return False
    if n < 0 or (n == 0 and not closed):
        return False
    return inner(x, weyl_vector()) > 0


def reduce_to_chamber(x: Sequence[int], max_steps: int = 1_000_000) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Walk ``x`` into the closed fundamental chamber ``C(v)``.

    Repeatedly reflects in the smallest-index simple root with ``x . e_i < 0``.
    Returns ``(x', word)`` with ``x' = apply_word(word, x)``.
    """
    x = tuple(int(c) for c in x)
    if norm(x) < 0 or inner(x, weyl_vector()) <= 0:
        raise PreconditionError("vector is not in the closed positive cone containing v")
    xs = np.array(x, dtype=object)
    g = GRAM.astype(object)
    letters: list[int] = []
    for _ in range(max_steps):
        pairing = g.dot(xs)
        neg = [i for i in range(RANK) if pairing[i] < 0]
        if not neg:
            return tuple(int(c) for c in xs), tuple(reversed(letters))
        i = neg[0]
        xs = xs.copy()
        xs[i] += pairing[i]  # x + (e_i.x) e_i
        letters.append(i + 1)
    raise RuntimeError("chamber reduction did not terminate")


def mod2_vec(x: Sequence[int]) -> int:
    return f2q.from_bits([int(c) % 2 for c in x])


def mod2_matrix(m) -> f2q.F2Mat:
    return f2q.F2Mat.from_int_matrix(np.asarray(m, dtype=object) % 2)


def mod2_map(word: Sequence[int]) -> f2q.F2Mat:
    m = f2q.F2Mat.identity()
    for letter in word:
        if letter != NEG:
            m = m @ f2q.transvection(f2q.unit(letter))
    return m


def preserves_gram(m) -> bool:
    m = np.asarray(m, dtype=object)
    return bool((m.T.dot(GRAM.astype(object)).dot(m) == GRAM.astype(object)).all())


def orthogonal_complement(h: Sequence[int]) -> list[tuple[int, ...]]:
    """Integral basis of ``h^perp`` in E10 (saturated)."""
    from .intlattice import hermite_rows, integer_kernel

    row = [int(c) for c in GRAM @ np.asarray(h, dtype=np.int64)]
    return hermite_rows(integer_kernel([row]))
