"""numba kernels for coset canonicalization and coset-space enumeration.

Group elements are passed as ten packed columns (int64); ``M(x)`` is the XOR
of the columns selected by the bits of ``x``.
"""

import numba as nb
import numpy as np

_LOWBIT = np.array([0] + [(m & -m).bit_length() - 1 for m in range(1, 32)], dtype=np.int64)
_HMUL0 = np.uint64(0x9E3779B97F4A7C15)
_HMUL1 = np.uint64(0xC2B2AE3D27D4EB4F)


@nb.njit(cache=True, inline="always")
def apply_cols(cols, x):
    y = 0
    j = 0
    while x:
        if x & 1:
            y ^= cols[j]
        x >>= 1
        j += 1
    return y


@nb.njit(cache=True)
def _fill_tables(cols, lo, hi, lowbit):
    lo[0] = 0
    hi[0] = 0
    for m in range(1, 32):
        t = m & -m
        i = lowbit[m]
        lo[m] = lo[m ^ t] ^ cols[i]
        hi[m] = hi[m ^ t] ^ cols[5 + i]


@nb.njit(cache=True)
def canon(d, orb, orblen, ucols, out, lo, hi, tmp, lowbit):
    """Minimal element ``d*`` of the coset ``d A`` (A given by its chain)."""
    for j in range(10):
        out[j] = d[j]
    for lev in range(orblen.shape[0]):
        _fill_tables(out, lo, hi, lowbit)
        best = 1 << 20
        bp = -1
        for k in range(orblen[lev]):
            p = orb[lev, k]
            v = lo[p & 31] ^ hi[p >> 5]
            if v < best:
                best = v
                bp = p
        for j in range(10):
            c = ucols[lev, bp, j]
            tmp[j] = lo[c & 31] ^ hi[c >> 5]
        for j in range(10):
            out[j] = tmp[j]


@nb.njit(cache=True, inline="always")
def _pack(cols):
    k0 = np.uint64(0)
    k1 = np.uint64(0)
    for j in range(6):
        k0 |= np.uint64(cols[j]) << np.uint64(10 * j)
    for j in range(4):
        k1 |= np.uint64(cols[6 + j]) << np.uint64(10 * j)
    return k0, k1


@nb.njit(cache=True, inline="always")
def _unpack(k0, k1, cols):
    m = np.uint64(1023)
    for j in range(6):
        cols[j] = np.int64((k0 >> np.uint64(10 * j)) & m)
    for j in range(4):
        cols[6 + j] = np.int64((k1 >> np.uint64(10 * j)) & m)


@nb.njit(cache=True, inline="always")
def _slot(k0, k1, mask):
    h = (k0 * _HMUL0) ^ (k1 * _HMUL1)
    h ^= h >> np.uint64(29)
    return np.int64(h & np.uint64(mask))


@nb.njit(cache=True)
def _find(uf, i):
    root = i
    while uf[root] != root:
        root = uf[root]
    while uf[i] != root:
        nxt = uf[i]
        uf[i] = root
        i = nxt
    return root


@nb.njit(cache=True)
def _union(uf, a, b):
    ra = _find(uf, a)
    rb = _find(uf, b)
    if ra == rb:
        return
    # keep the smaller index as root: representatives are BFS-earliest
    if ra < rb:
        uf[rb] = ra
    else:
        uf[ra] = rb


@nb.njit(cache=True)
def _lookup(table, keys0, keys1, mask, k0, k1):
    s = _slot(k0, k1, mask)
    while True:
        idx = table[s]
        if idx < 0:
            return -1 - s
        if keys0[idx] == k0 and keys1[idx] == k1:
            return idx
        s = (s + 1) & mask


@nb.njit(cache=True)
def enumerate_cosets(n, gcols, gunion, bcols, orb, orblen, ucols, keys0, keys1, parent, pgen, uf):
    """BFS over ``G/A`` from the identity coset.

    ``gcols`` are the BFS generators acting on the left; an edge along
    generator ``g`` with ``gunion[g]`` set also merges the two cosets in the
    union-find ``uf``.  ``bcols`` are further merging generators, applied in a
    second pass.  Returns the number of cosets found, or ``-1`` if more than
    ``n`` turned up.
    """
    cap = 1
    while cap < 2 * n + 2:
        cap *= 2
    mask = cap - 1
    table = np.full(cap, -1, dtype=np.int32)
    lowbit = _LOWBIT
    lo = np.zeros(32, dtype=np.int64)
    hi = np.zeros(32, dtype=np.int64)
    tmp = np.zeros(10, dtype=np.int64)
    d = np.zeros(10, dtype=np.int64)
    nd = np.zeros(10, dtype=np.int64)
    c = np.zeros(10, dtype=np.int64)
    for j in range(10):
        d[j] = 1 << j
    canon(d, orb, orblen, ucols, c, lo, hi, tmp, lowbit)
    k0, k1 = _pack(c)
    s = _slot(k0, k1, mask)
    table[s] = 0
    keys0[0] = k0
    keys1[0] = k1
    parent[0] = -1
    pgen[0] = -1
    uf[0] = 0
    count = 1
    head = 0
    ng = gcols.shape[0]
    while head < count:
        _unpack(keys0[head], keys1[head], d)
        for g in range(ng):
            for j in range(10):
                nd[j] = apply_cols(gcols[g], d[j])
            canon(nd, orb, orblen, ucols, c, lo, hi, tmp, lowbit)
            k0, k1 = _pack(c)
            idx = _lookup(table, keys0, keys1, mask, k0, k1)
            if idx < 0:
                if count >= n:
                    return -1
                table[-1 - idx] = count
                keys0[count] = k0
                keys1[count] = k1
                parent[count] = head
                pgen[count] = g
                uf[count] = count
                idx = count
                count += 1
            if gunion[g]:
                _union(uf, head, idx)
        head += 1
    for i in range(count):
        _unpack(keys0[i], keys1[i], d)
        for b in range(bcols.shape[0]):
            for j in range(10):
                nd[j] = apply_cols(bcols[b], d[j])
            canon(nd, orb, orblen, ucols, c, lo, hi, tmp, lowbit)
            k0, k1 = _pack(c)
            idx = _lookup(table, keys0, keys1, mask, k0, k1)
            if idx < 0:
                return -1
            _union(uf, i, idx)
    for i in range(count):
        _find(uf, i)
    return count


@nb.njit(cache=True)
def canon_one(d, orb, orblen, ucols):
    out = np.zeros(10, dtype=np.int64)
    canon(d, orb, orblen, ucols, out, np.zeros(32, dtype=np.int64), np.zeros(32, dtype=np.int64),
          np.zeros(10, dtype=np.int64), _LOWBIT)
    return out


@nb.njit(cache=True)
def class_masks(idx, keys0, keys1, classes, member):
    """Row ``t``: which ``classes[k]`` land in ``member`` under coset ``idx[t]``."""
    out = np.zeros((idx.shape[0], classes.shape[0]), dtype=np.uint8)
    d = np.zeros(10, dtype=np.int64)
    for t in range(idx.shape[0]):
        _unpack(keys0[idx[t]], keys1[idx[t]], d)
        for k in range(classes.shape[0]):
            out[t, k] = member[apply_cols(d, classes[k])]
    return out


@nb.njit(cache=True)
def orbit_sizes(uf):
    n = uf.shape[0]
    size = np.zeros(n, dtype=np.int64)
    for i in range(n):
        size[uf[i]] += 1
    return size


@nb.njit(cache=True)
def image_of_point(idx, keys0, keys1, x):
    out = np.zeros(idx.shape[0], dtype=np.int64)
    d = np.zeros(10, dtype=np.int64)
    for t in range(idx.shape[0]):
        _unpack(keys0[idx[t]], keys1[idx[t]], d)
        out[t] = apply_cols(d, x)
    return out
