import pytest

from finframe.errors import InvalidTopology, RoundTripFailure
from finframe.frame import OMEGA, Frame, is_k_coherent
from finframe.generate import b2, boolean, c3, frame_corpus, posets
from finframe.stone import (
    FiniteSpace,
    counit_check,
    frame_morphisms_to_two,
    is_sober,
    is_spatial,
    omega,
    open_of,
    point_space,
    points,
    prime_elements,
    spectral_check,
    stone_round_trip,
    unit_check,
)

from . import oracles


def test_diamond_points():
    F = Frame.from_poset(b2())
    assert prime_elements(F) == {"a", "b"}
    assert [x.name for x in points(F)] == ["x_a", "x_b"]
    X = point_space(F)
    assert sorted(X.label(U) for U in X.opens) == ["{x_a,x_b}", "{x_a}", "{x_b}", "{}"]


def test_chain_points_form_sierpinski_space():
    X = point_space(Frame.from_poset(c3()))
    assert len(X) == 2 and len(X.opens) == 3
    S = X.specialization()
    assert S.covers() == [(0, 1)]


def test_primes_match_oracle():
    for F in frame_corpus(6):
        els, le = oracles.order(F.poset)
        assert prime_elements(F) == oracles.primes(els, le)


def test_points_match_two_valued_maps():
    for F in frame_corpus(6):
        els, le = oracles.order(F.poset)
        brute = sorted(tuple(f[a] for a in els) for f in oracles.two_valued_maps(els, le))
        assert sorted(x.table() for x in points(F)) == brute
        assert sorted(frame_morphisms_to_two(F)) == brute
        assert len(points(F, oracle=True)) == len(brute)


def test_point_counts_of_boolean_frames():
    assert [len(points(boolean(n))) for n in range(5)] == [0, 1, 2, 3, 4]


def test_open_of_preserves_lattice_operations():
    for F in frame_corpus(6):
        pts = points(F)
        for a in range(len(F)):
            for b in range(len(F)):
                assert open_of(F, F.join(a, b), pts) == open_of(F, a, pts) | open_of(F, b, pts)
                assert open_of(F, F.meet(a, b), pts) == open_of(F, a, pts) & open_of(F, b, pts)


def test_invalid_topology():
    with pytest.raises(InvalidTopology):
        FiniteSpace.from_names(["x", "y"], [[], ["x"], ["y"]])


def test_indiscrete_pair_is_not_sober():
    X = FiniteSpace.from_names(["x", "y"], [[], ["x", "y"]])
    verdict = is_sober(X)
    assert not verdict and verdict.witness == "{x,y}"
    with pytest.raises(RoundTripFailure):
        unit_check(X)


def test_spaces_are_topologies():
    for F in frame_corpus(6):
        X = point_space(F)
        assert oracles.is_topology(
            range(len(X)), [frozenset(i for i in range(len(X)) if U >> i & 1) for U in X.opens]
        )


def test_counit_on_corpus():
    for F in frame_corpus(6):
        assert is_spatial(F)
        assert counit_check(F).ok


def test_unit_on_corpus_spaces():
    for F in frame_corpus(6):
        assert unit_check(point_space(F)).ok


def test_unit_on_alexandrov_spaces():
    # finite T0 spaces are the posets with their down-set topology
    for n in range(1, 5):
        for P in posets(n):
            opens = P.downsets()
            X = FiniteSpace(P.elements, opens)
            assert is_sober(X)
            assert unit_check(X).ok
            assert len(omega(X)) == len(opens)


def test_spectral_round_trip():
    for F in frame_corpus(6):
        for arity in (2, 3, OMEGA):
            if is_k_coherent(F, arity):
                assert stone_round_trip(X=point_space(F), F=F, arity=arity).ok
            else:
                with pytest.raises(RoundTripFailure):
                    spectral_check(F, arity)
