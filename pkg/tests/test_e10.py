import numpy as np
import pytest
from hypothesis import given, strategies as st

from enriques_lattice import e10, f2q
from enriques_lattice.intlattice import PreconditionError, determinant

words = st.lists(st.integers(1, 10), max_size=25)


def test_gram_is_even_unimodular_of_signature_1_9():
    g = e10.GRAM
    assert determinant(g.tolist()) == -1
    assert all(g[i, i] == -2 for i in range(10))
    eig = np.linalg.eigvalsh(g.astype(float))
    assert (eig > 0).sum() == 1 and (eig < 0).sum() == 9


def test_dynkin_shape():
    edges = {(i + 1, j + 1) for i in range(10) for j in range(i + 1, 10) if e10.GRAM[i, j]}
    assert edges == {(k, k + 1) for k in range(1, 9)} | {(7, 10)}


def test_weyl_vector():
    v = e10.weyl_vector()
    assert v == (30, 61, 93, 126, 160, 195, 231, 153, 76, 115)
    assert e10.norm(v) == 1240
    assert all(e10.inner(v, e10.unit(i)) == 1 for i in range(1, 11))


def test_dual_basis_and_inverse_gram_nonnegative():
    dual = e10.dual_basis()
    for i, w in enumerate(dual, 1):
        assert [e10.inner(w, e10.unit(j)) for j in range(1, 11)] == [int(i == j) for j in range(1, 11)]
    assert all(c >= 0 for row in e10._inverse_gram() for c in row)
    assert e10.norm(dual[0]) == 0


@given(words)
def test_word_matrix_is_isometry_reducing_to_transvections(word):
    m = e10.word_matrix(word)
    assert e10.preserves_gram(m)
    assert e10.mod2_matrix(m) == e10.mod2_map(word)


@given(words, st.lists(st.integers(-3, 3), min_size=10, max_size=10))
def test_apply_word_matches_matrix(word, x):
    m = e10.word_matrix(word)
    assert e10.apply_word(word, x) == tuple(int(c) for c in m.dot(np.array(x, dtype=object)))


@given(st.lists(st.integers(0, 3), min_size=10, max_size=10).filter(any), words)
def test_reduce_to_chamber_recovers_chamber_point(a, word):
    h = e10.from_chamber_coords(a)
    x = e10.apply_word(word, h)
    y, w = e10.reduce_to_chamber(x)
    assert y == h
    assert e10.apply_word(w, x) == y
    assert all(c >= 0 for c in e10.chamber_coords(y))


def test_reduce_to_chamber_rejects_negative_vectors():
    with pytest.raises(PreconditionError):
        e10.reduce_to_chamber(e10.unit(1))
    with pytest.raises(PreconditionError):
        e10.reduce_to_chamber(tuple(-c for c in e10.weyl_vector()))


@given(words, st.integers(1, 10))
def test_reflection_in_a_root_reduces_to_its_transvection(word, i):
    r = e10.apply_word(word, e10.unit(i))
    assert e10.norm(r) == -2
    m = e10.reflection_matrix(r)
    assert e10.preserves_gram(m)
    assert e10.mod2_matrix(m) == f2q.transvection(e10.mod2_vec(r))


@given(st.lists(st.integers(0, 3), min_size=10, max_size=10).filter(any))
def test_orthogonal_complement(a):
    h = e10.from_chamber_coords(a)
    basis = e10.orthogonal_complement(h)
    assert len(basis) == 9
    assert all(e10.inner(h, k) == 0 for k in basis)
