import pytest
from hypothesis import given, strategies as st

from mrstab import rootsys
from mrstab.cascade import cascade_size, format_cascade, kostant_cascade, u_minus_support

ALL_UP_TO_8 = (
    [f"A{r}" for r in range(1, 9)]
    + [f"B{r}" for r in range(2, 9)]
    + [f"C{r}" for r in range(3, 9)]
    + [f"D{r}" for r in range(4, 9)]
    + ["G2", "F4", "E6", "E7", "E8"]
)


def test_small_cascades():
    a2 = rootsys.build("A2")
    c = kostant_cascade(a2)
    assert c.members == (frozenset({1, 2}),) and c.roots == ((1, 1),)
    c = kostant_cascade(rootsys.build("A3"))
    assert set(c.roots) == {(1, 1, 1), (0, 1, 0)} and len(c) == 2
    assert len(kostant_cascade(rootsys.build("E8"))) == 8


@pytest.mark.parametrize("name,k", [("A5", 3), ("D7", 6), ("E6", 4), ("E7", 7), ("F4", 4), ("G2", 2), ("B5", 5)])
def test_cascade_size_table(name, k):
    assert cascade_size(rootsys.SimpleType.parse(name)) == k


@pytest.mark.parametrize("name", ALL_UP_TO_8)
def test_cascade_matches_table(name):
    rs = rootsys.build(name)
    c = kostant_cascade(rs)
    assert len(c) == cascade_size(rs.type)
    # members are connected and each root is the highest root of its member
    for k, r in zip(c.members, c.roots):
        assert rootsys.is_connected(rs, k)
        assert r == rootsys.highest_root(rs, k)


@pytest.mark.parametrize("name", ALL_UP_TO_8)
def test_cascade_strongly_orthogonal(name):
    rs = rootsys.build(name)
    roots = kostant_cascade(rs).roots
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            assert rootsys.is_strongly_orthogonal(rs, a, b)


def test_u_minus_support():
    a3 = rootsys.build("A3")
    assert u_minus_support(a3, a3.simple) == set()
    assert u_minus_support(a3, ()) == set(kostant_cascade(a3).roots)
    assert u_minus_support(a3, {2}) == {(1, 1, 1)}


@given(st.sampled_from(["A6", "B4", "C4", "D5", "E6", "F4"]), st.data())
def test_subset_cascade_is_union_over_components(name, data):
    rs = rootsys.build(name)
    pi = data.draw(st.sets(st.sampled_from(rs.simple)))
    whole = kostant_cascade(rs, pi)
    parts = [kostant_cascade(rs, c) for c in rootsys.connected_components(rs, pi)]
    assert sorted(whole.roots) == sorted(r for p in parts for r in p.roots)


def test_format():
    text = format_cascade(kostant_cascade(rootsys.build("A3")))
    assert text.startswith("K = {{a1,a2,a3}, {a2}}")
