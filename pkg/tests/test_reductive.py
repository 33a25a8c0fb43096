import pytest
from hypothesis import given, strategies as st

from mrstab.reductive import ReductiveType as R


def test_low_rank_coincidences():
    assert R.so(1) == R.sp(0) == R.zero()
    assert R.so(2) == R.torus(1)
    assert R.so(3) == R.sp(2) == R.parse("A1") == R.parse("B1") == R.parse("C1")
    assert R.so(4) == R.parse("2A1")
    assert R.so(5) == R.sp(4) == R.parse("B2") == R.parse("C2")
    assert R.so(6) == R.parse("A3") == R.parse("D3")
    assert R.gl(1) == R.torus(1)


def test_invariants():
    assert R.parse("B3 ⊕ ℂ").invariants() == (22, 4, 21, 1)
    assert R.parse("G2").dim == 14
    assert R.parse("2A1 ⊕ ℂ").rank == 3
    assert R.gl(3).invariants() == (9, 3, 8, 1)
    assert R.parse("F4").rank == 4 and R.parse("E8").dim == 248


def test_parse_forms():
    assert R.parse("so_3 ⊕ sp_4") == R.parse("A1 + C2")
    assert R.parse("B3+C") == R.parse("B3 ⊕ ℂ")
    assert R.parse("0") == R.zero()
    assert str(R.parse("A1 ⊕ 2ℂ")) == "A1 ⊕ 2ℂ"
    with pytest.raises(ValueError):
        R.parse("Q7")


def test_drop_center():
    assert R.gl(4).drop_center() == R.parse("A3")
    with pytest.raises(ValueError):
        R.parse("A2").drop_center()


pieces = st.sampled_from(["A1", "A2", "B3", "C2", "C4", "D4", "D5", "G2", "F4", "E6", "ℂ", "so_7", "sp_6", "gl_3"])


@given(st.lists(pieces, max_size=5))
def test_str_parse_round_trip(parts):
    t = R.parse(" ⊕ ".join(parts) or "0")
    assert R.parse(str(t)) == t
    assert t.dim == t.derived_dim + t.center
