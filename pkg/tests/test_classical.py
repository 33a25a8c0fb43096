import pytest
from hypothesis import given, strategies as st

from mrstab import classical as C
from mrstab.classical import IsoParabolic, Summand
from mrstab.oracle import Sampler, index_numeric, verify_mrs
from mrstab.reductive import ReductiveType

RT = ReductiveType.parse


def test_property_star():
    assert not C.has_property_star((1, 2))
    assert C.has_property_star((2, 1))
    assert not C.has_property_star((3, 3, 2))
    assert C.has_property_star(())


def test_paired_star():
    assert not C.has_paired_star((1, 2))
    assert not C.has_paired_star((3, 3, 1, 2))
    # (1, 1) closes an odd pair, so the following even part is harmless
    assert C.has_paired_star((1, 1, 2))
    assert not C.has_property_star((1, 1, 2))
    assert C.has_paired_star((3, 3, 2))


@given(st.lists(st.integers(1, 5), max_size=6))
def test_literal_star_implies_paired(parts):
    if C.has_property_star(tuple(parts)):
        assert C.has_paired_star(tuple(parts))


def test_a_prime():
    assert C.a_prime(IsoParabolic(1, 10, (2, 3))) == (2,)
    assert C.a_prime(IsoParabolic(1, 10, (2, 2))) == (2, 2)
    assert C.a_prime(IsoParabolic(1, 11, (3, 2))) == (3, 2)
    assert C.a_prime(IsoParabolic(1, 6, (3,))) == ()


def test_is_qr_so():
    assert not C.is_qr_so(IsoParabolic(1, 7, (1, 2)))
    assert C.is_qr_so(IsoParabolic(1, 9, (2, 1)))
    for n in range(3, 12):
        assert C.is_qr_so(IsoParabolic(1, n, (1,)))
    assert C.is_qr_so(IsoParabolic(1, 8, (1, 1, 2)))
    assert C.is_qr(IsoParabolic(-1, 6, (1, 2)))
    with pytest.raises(ValueError):
        C.is_qr_so(IsoParabolic(-1, 6, (1,)))


def test_iso_parabolic_validation():
    with pytest.raises(ValueError):
        IsoParabolic(-1, 7, (1,))
    with pytest.raises(ValueError):
        IsoParabolic(1, 7, (2, 2))
    with pytest.raises(ValueError):
        IsoParabolic(0, 4, (1,))


def test_mrs_sp():
    m = C.mrs_sp(IsoParabolic(-1, 6, (1,)))
    assert m.type == RT("C2") and m.rank == 2
    m = C.mrs_sp(IsoParabolic(-1, 8, (2, 2)))
    assert m.type == RT("2ℂ") and m.rank == 2
    assert C.mrs_sp(IsoParabolic(-1, 4, (2,))).type == RT("ℂ")
    assert C.mrs_sp(IsoParabolic(-1, 8, (4,))).type == RT("so_4")


def test_r_s():
    assert C.r_s_summand((2, 2), 2) == [Summand("sp", 2), Summand("sp", 2)]
    assert C.r_s_summand((3, 3), 2) == [Summand("sp", 2), Summand("sp", 2)]
    assert C.r_s_summand((3, 3), 1) == []
    assert C.r_s_summand((5, 2, 4), 0) == []
    with pytest.raises(ValueError):
        C.r_s_summand((2,), 2)


@pytest.mark.parametrize("n", range(5, 12))
def test_mrs_so_first_vector(n):
    m = C.mrs_so(IsoParabolic(1, n, (1,)))
    assert m.case == 2 and m.type == RT(f"so_{n - 3}")


def test_mrs_so_examples():
    m = C.mrs_so(IsoParabolic(1, 8, (2, 2)))
    assert m.case == 1 and m.type == RT("2A1")
    # r = 3 with 2r != n: the second case, sp_2 from the last part; index 1 numerically
    m = C.mrs_so(IsoParabolic(1, 7, (3,)))
    assert m.case == 2 and m.type == RT("A1")
    assert C.mrs_so(IsoParabolic(1, 6, (2, 1))).case == 3
    assert C.mrs_so(IsoParabolic(1, 6, (3,))).case == 4
    assert C.mrs_so(IsoParabolic(1, 10, (1, 4))).case == 5
    with pytest.raises(C.NotQuasiReductive):
        C.mrs_so(IsoParabolic(1, 7, (1, 2)))


@pytest.mark.parametrize("eps,nmax", [(-1, 6), (1, 7)])
def test_rank_equals_index(eps, nmax):
    s = Sampler(3)
    for n in range(2, nmax + 1, 2) if eps == -1 else range(3, nmax + 1):
        for p in C.all_parabolics(eps, n):
            if C.is_qr(p):
                assert C.mrs_classical(p).rank == index_numeric(p.realize(), s), p.name


@given(st.integers(3, 40).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, 4), min_size=1, max_size=n // 2))))
def test_so_dispatch_total(nparts):
    n, parts = nparts
    if sum(parts) > n // 2:
        return
    p = IsoParabolic(1, n, tuple(parts))
    if C.is_qr_so(p):
        m = C.mrs_so(p)
        assert 1 <= m.case <= 5
        assert all(x.size >= 0 for x in m.summands)


def test_sp_dimension():
    for n in (4, 6, 8):
        for p in C.all_parabolics(-1, n):
            m = C.mrs_sp(p)
            assert C.embed_mrs_sp(p).dim == m.type.dim


@pytest.mark.parametrize("eps,n,a", [(-1, 4, (2,)), (-1, 6, (1,)), (-1, 8, (4,)), (-1, 8, (1, 2)), (1, 8, (2, 2)), (1, 7, (1,)), (1, 9, (3,)), (1, 8, (1, 1, 2))])
def test_embeddings_certify(eps, n, a):
    p = IsoParabolic(eps, n, a)
    q, m = p.realize(), C.embed_mrs_classical(p)
    assert q.contains_algebra(m) and m.is_bracket_closed()
    assert m.dim == C.mrs_classical(p).type.dim
    assert verify_mrs(q, m, Sampler(0)).passed


def test_no_embedding_for_later_cases():
    with pytest.raises(C.NoEmbedding):
        C.embed_mrs_classical(IsoParabolic(1, 6, (3,)))
