from fractions import Fraction

import pytest

from mrstab import linalg, meander, oracle as O, realize as R
from mrstab.classical import IsoParabolic, embed_mrs_sp
from mrstab.oracle import Sampler
from mrstab.reductive import ReductiveType


def borel2():
    return R.build_seaweed_gl((1, 1), (2,))


def test_contraction_form():
    q = borel2()
    assert all(not any(row) for row in O.contraction_form(q, [0] * q.dim))
    # the form x -> x_12 is represented by the lower-left matrix E_21
    xi = O.LinearForm.from_matrix(q, R.unit(1, 0))
    f = O.contraction_form(q, xi)
    assert linalg.rank_of(f) == 2
    assert all(f[i][j] == -f[j][i] for i in range(3) for j in range(3))
    ab = R.MatrixLieAlgebra.span(3, [R.unit(0, 0), R.unit(1, 1)])
    assert all(not any(row) for row in O.contraction_form(ab, [3, 5]))


def test_stabilisers():
    q = borel2()
    assert O.stabiliser_of(q, [0, 0, 0]) == q
    assert O.stabiliser_dim(q, Sampler(1).vector(3)) == 1
    g = R.build_gl(3)
    st = O.stabiliser_of(g, Sampler(2).vector(9))
    assert st.dim == 3 and st.is_abelian()
    assert st.contains_algebra(g.center())


@pytest.mark.parametrize("q,idx", [
    (R.build_gl(3), 3),
    (R.build_seaweed_gl((1, 1), (2,)), 1),
    (R.build_parabolic_iso(-1, 4, (2,)), 1),
    (R.build_seaweed_gl((9, 3, 4), (4, 1, 11)), 8),
])
def test_index_numeric(q, idx):
    assert O.index_numeric(q, Sampler(0)) == idx


def test_generic_torus():
    tv = O.generic_torus(R.build_gl(2), Sampler(0))
    assert tv.ok and tv.torus.dim == 2 and tv.verdict == "TORUS"
    tv = O.generic_torus(R.build_parabolic_iso(-1, 6, (1,)), Sampler(0))
    assert tv.ok and tv.torus.dim == 2
    tv = O.generic_torus(R.build_parabolic_iso(1, 7, (1, 2)), Sampler(0, max_resamples=20))
    assert not tv.ok and tv.verdict == "NonSemisimpleStabiliser"


def test_mrs_numeric():
    r = O.mrs_numeric(R.build_seaweed_gl((2, 2), (4,)), Sampler(0))
    assert O.invariant_tuple(r.m) == (4, 2, 3, 1)
    g = R.build_gl(3)
    assert O.mrs_numeric(g, Sampler(0)).m == g
    r = O.mrs_numeric(R.build_parabolic_iso(-1, 6, (1,)), Sampler(0))
    assert r.m.dim == 10 and O.identify_type(r.m, Sampler(0)).type == ReductiveType.parse("C2")
    with pytest.raises(O.ReductivityCheckFailed):
        O.mrs_numeric(R.build_parabolic_iso(1, 7, (1, 2)), Sampler(0, max_resamples=4))


def test_upsilon_extremes():
    g = R.build_gl(2)
    assert O.upsilon_space(g, g).dim == 0
    zero = R.MatrixLieAlgebra.span(2, [])
    assert O.upsilon_space(g, zero).dim == 4
    q = R.build_seaweed_gl((2, 2), (4,))
    m = R.embed_mrs_gl(meander.mrs_gl((2, 2), (4,)), 4)
    ups = O.upsilon_space(q, m)
    # forms trace-paired with the radical block E_13 + E_24 (seen through E_31 + E_42)
    xi = O.LinearForm.from_matrix(q, {(2, 0): Fraction(1), (3, 1): Fraction(1)})
    assert ups.contains(list(xi.values))
    with pytest.raises(R.NotContained):
        O.upsilon_space(borel2(), R.MatrixLieAlgebra.span(2, [R.unit(1, 0)]))


def test_verify_mrs_examples():
    q = R.build_seaweed_gl((2, 2), (4,))
    assert O.verify_mrs(q, R.embed_mrs_gl(meander.mrs_gl((2, 2), (4,)), 4), Sampler(0)).passed
    q = borel2()
    assert O.verify_mrs(q, R.embed_mrs_gl(meander.mrs_gl((1, 1), (2,)), 2), Sampler(0)).passed


def test_verify_mrs_negative_control():
    q = R.build_gl(2)
    wrong = R.MatrixLieAlgebra.span(2, [R.add(R.unit(0, 0), R.unit(0, 1))])
    v = O.verify_mrs(q, wrong, Sampler(0))
    assert not v.passed and v.target_dim == 1


def test_identify_type():
    t = O.identify_type(R.build_gl(3), Sampler(0))
    assert t.status == "OK" and t.type == ReductiveType.parse("A2 ⊕ ℂ")
    m = R.embed_mrs_gl(meander.mrs_gl((2, 2), (4,)), 4)
    assert O.identify_type(m, Sampler(0)).type == ReductiveType.parse("A1 ⊕ ℂ")
    m = embed_mrs_sp(IsoParabolic(-1, 6, (1,)))
    assert O.identify_type(m, Sampler(0)).type == ReductiveType.parse("C2")
    assert O.identify_type(R.build_classical(1, 7), Sampler(0)).type == ReductiveType.parse("B3")
    assert O.identify_type(R.MatrixLieAlgebra.span(3, [R.unit(0, 0), R.unit(2, 2)]), Sampler(0)).type == ReductiveType.torus(2)


def test_sampler_determinism():
    assert Sampler(5).vector(6) == Sampler(5).vector(6)
    assert Sampler(5).child("x").seed == Sampler(5).child("x").seed != Sampler(5).child("y").seed
