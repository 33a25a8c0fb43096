import random

import pytest

from mrstab import exceptional as X, rootsys
from mrstab.classical import NotQuasiReductive, mrs_classical
from mrstab.reductive import ReductiveType

RT = ReductiveType.parse


def subsets(rank):
    for mask in range(1 << rank):
        yield frozenset(i + 1 for i in range(rank) if mask >> i & 1)


def test_tables_load():
    rows = X.load_tables()
    assert len(rows) == 21
    assert {str(t): len(X.table_rows(t)) for t in ("E6", "E7", "E8", "F4")} == {"E6": 8, "E7": 6, "E8": 5, "F4": 2}
    assert all(r.index == r.mrs.rank for r in rows)


@pytest.mark.parametrize("text", [
    "E7; 5,6; 2; A1; note",
    "F4; 3,9; 1; A1; note",
    "E6; 3,6; 3",
    "E9; 1; 1; A1; note",
])
def test_table_load_checks(text):
    with pytest.raises((X.TableError, rootsys.InvalidType)):
        X.parse_tables(text)


def test_table_lookup():
    r = X.table_lookup("E7", range(2, 8))
    assert r.mrs == RT("F4") and r.index == 4 and r.row == 2
    r = X.table_lookup("E8", {1, 2, 3, 4, 5, 6, 8})
    assert r.mrs == RT("B6") and r.index == 6 and r.row == 1
    r = X.table_lookup("F4", {3, 4})
    assert r.mrs == RT("A1") and r.index == 1
    r = X.table_lookup("E6", {2, 3, 4, 6})
    assert r.index == 4 and r.mrs == RT("B3 ⊕ ℂ") and r.embedding_note == "R(ϖ3); h1∨ − h5∨"
    # the diagram automorphism of E6 swaps 1 <-> 5 and 2 <-> 4
    assert X.table_lookup("E6", {3, 4, 5, 6}).row == 7
    with pytest.raises(X.NotInTable):
        X.table_lookup("E7", {1})


def test_exclusions():
    assert not X.is_qr_exceptional("E7", {1, 4, 5, 6})
    assert not X.is_qr_exceptional("F4", {4})
    assert X.is_qr_exceptional("E6", {3, 6})
    assert not X.is_qr_exceptional("E6", {1, 2, 3, 5, 6})
    assert not X.is_qr_exceptional("E8", range(1, 8))
    assert not X.is_qr_exceptional("G2", {2})
    assert X.is_qr_exceptional("G2", {1})
    with pytest.raises(NotQuasiReductive):
        X.mrs_exceptional("E8", {1, 2, 3})


def test_mrs_exceptional_examples():
    assert X.mrs_exceptional("E8", {1, 2, 3, 4, 5, 6, 8}) == RT("B6")
    assert X.mrs_exceptional("E6", {1, 3, 5, 6}) == RT("2A1 ⊕ ℂ")
    trace = []
    assert X.mrs_exceptional("E6", {1, 2, 3, 4, 5}, trace) == RT("A5")
    assert "highest-root reduction" in trace[0]
    assert X.mrs_exceptional("E8", range(1, 9)) == RT("E8")
    assert X.mrs_exceptional("G2", set()) == RT("0")
    with pytest.raises(ValueError):
        X.mrs_exceptional("B3", {1})


@pytest.mark.parametrize("name", ["E6", "E7", "E8", "F4", "G2"])
def test_every_subset_is_answered(name):
    rank = rootsys.build(name).rank
    qr = 0
    for pi in subsets(rank):
        try:
            X.mrs_parabolic(name, pi)
            qr += 1
        except NotQuasiReductive:
            pass
    assert qr == {"E6": 46, "E7": 76, "E8": 108, "F4": 12, "G2": 3}[name]


def test_borel_indices():
    # p(empty) is a Borel subalgebra; its index is rank minus the cascade size
    assert X.index_parabolic("E8", set()) == 0
    assert X.index_parabolic("E6", set()) == 2
    assert X.index_parabolic("F4", set()) == 0
    assert X.index_parabolic("E7", set()) == 0


def test_classical_flags():
    # both spin nodes omitted: a 4-dimensional isotropic space; one omitted: 5
    f = X.flag_from_pi("D5", {1, 2, 3})
    assert (f.epsilon, f.n, f.a.parts) == (1, 10, (4,))
    f = X.flag_from_pi("D5", {1, 2, 3, 5})
    assert f.a.parts == (5,)
    f = X.flag_from_pi("C3", {1})
    assert (f.epsilon, f.n, f.a.parts) == (-1, 6, (2, 1))
    assert X.flag_from_pi("B3", {1, 2, 3}) is None
    assert X.composition_from_pi(5, {1, 2, 4}) == (3, 2, 1)


def test_reduction_matches_classical_formulas():
    rng = random.Random(11)
    types = ["B2", "B3", "B4", "B5", "B6", "C3", "C4", "C5", "C6", "D4", "D5", "D6", "D7"]
    checked = 0
    while checked < 50:
        t = rootsys.SimpleType.parse(rng.choice(types))
        rs = rootsys.build(t)
        alpha = rootsys.theta_tilde(rs).alpha
        pi = frozenset(i for i in rs.simple if i != alpha and rng.random() < 0.5)
        f = X.flag_from_pi(t, pi)
        try:
            expect = mrs_classical(f).type
        except NotQuasiReductive:
            with pytest.raises(NotQuasiReductive):
                X.mrs_via_reduction(t, pi)
            checked += 1
            continue
        assert X.mrs_via_reduction(t, pi) == expect, (t, sorted(pi))
        checked += 1


def test_additivity_arithmetic():
    rng = random.Random(5)
    seen = 0
    for _ in range(400):
        name = rng.choice(["E7", "E8", "F4"])
        rs = rootsys.build(name)
        a = X.ALPHA_TILDE[name]
        pi = frozenset({a} | {i for i in rs.simple if rng.random() < 0.5})
        comps = rootsys.connected_components(rs, pi)
        if len(comps) < 2 or not X.is_qr_parabolic(name, pi):
            continue
        assert X.index_parabolic(name, pi) == sum(X.index_parabolic(name, c) for c in comps)
        seen += 1
    assert seen > 20


def test_leaves_recorded():
    leaves = []
    X.mrs_exceptional("E7", {1, 2, 3}, leaves=leaves)
    assert leaves and all(t.family in "ABCD" for t, _, _ in leaves)
