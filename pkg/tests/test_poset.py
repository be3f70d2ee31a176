import numpy as np
import pytest

from finframe.errors import CycleDetected, DuplicateElement, NotALattice, NotDistributive, UnknownElement
from finframe.generate import b2, lattices, m3, p6, posets, triple_join
from finframe.poset import (
    FinitePoset,
    as_lattice,
    chain,
    downset_lattice,
    find_isomorphism,
    hasse_dot,
    is_distributive,
    join_irreducibles,
    partial_join,
    partial_meet,
    poset_from_covers,
)

from . import oracles


def test_two_chain():
    P = poset_from_covers(["0", "1"], [("0", "1")])
    assert P.le(0, 1) and not P.le(1, 0)


def test_diamond_order():
    P = b2()
    assert P.leq.sum() == 9
    assert not P.le(P.index("a"), P.index("b"))


def test_cycle_rejected():
    with pytest.raises(CycleDetected) as err:
        poset_from_covers(["x", "y"], [("x", "y"), ("y", "x")])
    assert set(err.value.witness) == {"x", "y"}


def test_unknown_and_duplicate_names():
    with pytest.raises(UnknownElement):
        poset_from_covers(["x"], [("x", "z")])
    with pytest.raises(DuplicateElement):
        poset_from_covers(["x", "x"], [])


def test_leq_is_read_only():
    with pytest.raises(ValueError):
        b2().leq[0, 1] = False


def test_partial_joins_of_p6():
    P = p6()
    assert partial_join(b2(), ["a", "b"]) == "1"
    assert partial_join(P, ["a", "b"]) is None
    assert partial_join(P, ["a", "b", "c"]) == "t"
    assert partial_join(P, ["a", "c"]) == "t"
    assert partial_meet(P, ["t", "t2"]) is None
    with pytest.raises(UnknownElement):
        partial_join(P, ["q"])


def test_as_lattice_diamond():
    L = as_lattice(b2())
    assert L.join_names("a", "b") == "1"
    assert L.meet_names("a", "b") == "0"


def test_not_a_lattice_witness():
    with pytest.raises(NotALattice) as err:
        as_lattice(p6())
    a, b = err.value.witness
    assert partial_join(p6(), [a, b]) is None or partial_meet(p6(), [a, b]) is None


def test_m3_not_distributive():
    verdict = is_distributive(as_lattice(m3()))
    assert not verdict
    assert verdict.witness == ("p0", "p1", "c")


def test_join_irreducibles_of_diamond():
    J = join_irreducibles(as_lattice(b2()))
    assert set(J.elements) == {"a", "b"}
    with pytest.raises(NotDistributive):
        join_irreducibles(as_lattice(m3()))


def test_lattice_counts():
    # numbers of unlabelled lattices with 1..7 elements
    assert [len(lattices(n)) for n in range(1, 8)] == [1, 1, 1, 2, 5, 15, 53]


def test_poset_counts():
    assert [len(posets(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]


def test_lattice_predicate_matches_oracle():
    for n in range(1, 5):
        for Q in posets(n):
            els, le = oracles.order(Q)
            try:
                as_lattice(Q)
                got = True
            except NotALattice:
                got = False
            assert got == oracles.is_lattice(els, le)


def test_distributivity_matches_oracle():
    for n in range(1, 7):
        for P in lattices(n):
            els, le = oracles.order(P)
            assert bool(is_distributive(as_lattice(P))) == oracles.is_distributive(els, le)


def test_birkhoff_round_trip():
    for n in range(1, 5):
        for P in posets(n):
            L = downset_lattice(P)
            assert is_distributive(L)
            assert find_isomorphism(join_irreducibles(L), P) is not None


def test_isomorphism_search():
    P = b2()
    Q = poset_from_covers(["z", "x", "y", "w"], [("z", "x"), ("z", "y"), ("x", "w"), ("y", "w")])
    iso = find_isomorphism(P, Q)
    assert iso["0"] == "z" and iso["1"] == "w"
    assert find_isomorphism(P, chain(4)) is None


def test_dual_and_subposet():
    P = triple_join()
    D = P.dual()
    assert D.le(D.index("t"), D.index("a"))
    S = P.subposet(P.mask(["a", "b", "ab"]))
    assert S.elements == ("a", "b", "ab")


def test_hasse_dot_is_sorted():
    text = hasse_dot(b2())
    assert text.splitlines()[0] == "digraph poset {"
    assert '"0" -> "a";' in text and '"b" -> "1";' in text
    assert text == hasse_dot(b2())


def test_empty_poset():
    P = FinitePoset([], np.zeros((0, 0), dtype=bool))
    assert len(P) == 0 and P.bottom() is None
