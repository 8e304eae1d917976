import numpy as np
from hypothesis import given, strategies as st

from enriques_lattice import e10, f2q

vec = st.integers(0, f2q.NPOINTS - 1)
aniso = st.sampled_from(f2q.anisotropic_vectors())


def _q_from_e10(x):
    lift = f2q.to_bits(x)
    return (e10.norm(lift) // 2) % 2


def test_census():
    assert len(f2q.isotropic_vectors()) == 527
    assert len(f2q.anisotropic_vectors()) == 496
    assert 0 not in f2q.isotropic_vectors()


def test_q_is_half_norm_of_a_lift():
    assert all(f2q.q(x) == _q_from_e10(x) for x in range(f2q.NPOINTS))


def test_simple_roots_are_anisotropic():
    assert all(f2q.q(f2q.unit(i)) == 1 for i in range(1, 11))


@given(vec, vec)
def test_polar_identity(x, y):
    assert f2q.q(x ^ y) == f2q.q(x) ^ f2q.q(y) ^ f2q.b(x, y)


@given(vec, vec)
def test_polar_form_matches_gram(x, y):
    assert f2q.b(x, y) == e10.inner(f2q.to_bits(x), f2q.to_bits(y)) % 2


@given(vec)
def test_bits_roundtrip(x):
    assert f2q.from_bits(f2q.to_bits(x)) == x


def test_polar_form_is_nondegenerate():
    rows = [[f2q.b(1 << i, 1 << j) for j in range(10)] for i in range(10)]
    from .oracles import gf2_rank

    assert gf2_rank(rows) == 10


@given(aniso, vec)
def test_transvection_is_isometric_involution(r, x):
    t = f2q.transvection(r)
    assert t(t(x)) == x
    assert f2q.q(t(x)) == f2q.q(x)
    assert t(r) == r


def test_transvections_pass_exhaustive_isometry_check():
    for r in f2q.anisotropic_vectors()[:25]:
        assert f2q.transvection(r).is_isometry()


@given(aniso, aniso)
def test_matrix_perm_roundtrip_and_composition(r, s):
    a, b = f2q.transvection(r), f2q.transvection(s)
    assert f2q.F2Mat.from_perm(a.to_perm()) == a
    ab = a @ b
    pa, pb = a.to_perm(), b.to_perm()
    assert np.array_equal(ab.to_perm(), pa[pb])
    assert ab.transpose().transpose() == ab


@given(st.lists(vec, max_size=8))
def test_span_rank_matches_brute_force(vectors):
    from .oracles import gf2_rank

    rk = f2q.rank(vectors)
    expected = gf2_rank([f2q.to_bits(v) for v in vectors]) if vectors else 0
    assert rk == expected
    S = f2q.span(vectors)
    for v in vectors:
        assert f2q.member(S, v)
    reachable = {0}
    for v in vectors:
        reachable |= {x ^ v for x in reachable}
    assert len(reachable) == 2**rk
    assert all(f2q.member(S, x) == (x in reachable) for x in range(0, f2q.NPOINTS, 7))
