from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from enriques_lattice import e10
from enriques_lattice.intlattice import (
    AdeType,
    GramLattice,
    PreconditionError,
    Sublattice,
    ade_recognize,
    determinant,
    hermite_rows,
    integer_kernel,
    is_negative_definite,
    rank_q,
    saturate,
    saturation_index,
    short_vectors,
    short_vectors_in_coset,
    simple_roots,
    solve_q,
)

E8 = GramLattice(tuple(tuple(int(c) for c in row) for row in e10.GRAM[2:, 2:]))
A2 = GramLattice(((-2, 1), (1, -2)))


def test_e8_is_unimodular_and_definite():
    assert determinant(E8.gram) == 1
    assert is_negative_definite(E8)
    assert not is_negative_definite(e10.LATTICE)


def test_e8_root_and_norm4_counts():
    assert len(short_vectors(E8, -2)) == 240
    assert len(short_vectors(E8, -4)) == 2160


def test_short_vectors_needs_negative_target():
    with pytest.raises(PreconditionError):
        short_vectors(E8, 0)


def test_a2_dual_coset_minimal_vectors():
    # A2^* / A2 = Z/3; each nontrivial class has 3 vectors of norm -2/3
    c = solve_q([list(r) for r in A2.gram], [1, 0])
    found = short_vectors_in_coset(A2, c, Fraction(-2, 3))
    assert len(found) == 3
    assert all(A2.norm(v) == Fraction(-2, 3) for v in found)


def test_gram_validation():
    with pytest.raises(PreconditionError):
        GramLattice(((-1, 0), (0, -2)))
    with pytest.raises(PreconditionError):
        GramLattice(((-2, 1), (0, -2)))
    with pytest.raises(PreconditionError):
        GramLattice(((-2, 2), (2, -2)))


def test_saturation_of_doubled_vector():
    L = GramLattice(((-2,),))
    assert saturation_index(Sublattice(L, ((2,),))) == 2
    assert saturate(Sublattice(L, ((6,),))).basis == ((1,),)


def _e8_sublattice(vectors):
    return Sublattice(E8, tuple(vectors))


def _roots_of(S):
    return [S.to_ambient(c) for c in short_vectors(S.lattice(), -2)]


def _affine_e8():
    """Simple roots of E8 (unit vectors), the lowest root, and the affine labels."""
    roots = short_vectors(E8, -2)
    theta = max(roots, key=sum)  # highest root: coefficients are the labels
    simple = [tuple(int(i == j) for j in range(8)) for i in range(8)]
    return simple, tuple(-c for c in theta), list(theta)


# removing one node of the affine E8 diagram (labels in brackets) leaves a
# maximal-rank sublattice of that index
_BOREL_DE_SIEBENTHAL = {1: {"E8"}, 2: {"D8", "E7A1"}, 3: {"A8", "E6A2"}, 4: {"A7A1", "D5A3"},
                        5: {"2A4"}, 6: {"A5A2A1"}}


def test_maximal_rank_sublattices_of_e8():
    simple, lowest, labels = _affine_e8()
    assert sorted(labels) == [2, 2, 3, 3, 4, 4, 5, 6]
    for k, label in enumerate(labels):
        basis = [v for j, v in enumerate(simple) if j != k] + [lowest]
        S = _e8_sublattice(basis)
        assert saturation_index(S) == label
        t = ade_recognize(_roots_of(S), E8)
        assert str(t) in _BOREL_DE_SIEBENTHAL[label]


def test_a8_in_e8_has_index_three():
    simple, lowest, labels = _affine_e8()
    for k, label in enumerate(labels):
        basis = [v for j, v in enumerate(simple) if j != k] + [lowest]
        S = _e8_sublattice(basis)
        if str(ade_recognize(_roots_of(S), E8)) == "A8":
            assert saturation_index(S) == 3
            assert str(ade_recognize(_roots_of(saturate(S)), E8)) == "E8"
            return
    pytest.fail("no A8 found")


@pytest.mark.parametrize("text,expected", [
    ("", "∅"), ("∅", "∅"), ("A1", "A1"), ("3A1", "3A1"), ("A1 A1", "2A1"), ("A1+E7", "E7A1"),
    ("D4A2A2", "D4 2A2"), ("D4 2A2", "D4 2A2"), ("E6 3A1", "E6 3A1"), ("E8", "E8"),
])
def test_ade_parse_roundtrip(text, expected):
    t = AdeType.parse(text)
    assert str(t) == expected
    assert AdeType.parse(str(t)) == t


def test_ade_rank_and_root_counts():
    t = AdeType.parse("E7A1")
    assert t.rank == 8 and t.num_roots == 126 + 2
    assert AdeType.parse("D8").num_roots == 112
    with pytest.raises(ValueError):
        AdeType.parse("A9 A2")


@pytest.mark.parametrize("labels,expected", [
    ([1], "A1"), ([1, 3], "2A1"), ([1, 2], "A2"), ([3, 4, 5, 6, 7, 8, 9, 10], "E8"),
    ([2, 3, 4, 5, 6, 7, 8, 10], "D8"), ([1, 2, 3, 4, 5, 6, 7, 8], "A8"), ([6, 7, 8, 10], "D4"),
])
def test_dynkin_recognition_of_simple_root_subsets(labels, expected):
    vs = [e10.unit(i) for i in labels]
    S = Sublattice(e10.LATTICE, tuple(vs))
    roots = _roots_of(S)
    assert str(ade_recognize(roots, e10.LATTICE)) == expected
    assert len(simple_roots(roots)) == len(labels)


small_ints = st.integers(-4, 4)


@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=1, max_size=3))
def test_integer_kernel_is_kernel(rows):
    ker = integer_kernel(rows)
    assert len(ker) == 4 - rank_q(rows)
    for k in ker:
        assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in rows)


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=4))
def test_hermite_rows_preserve_rank(vectors):
    h = hermite_rows(vectors)
    assert len(h) == rank_q(vectors)
