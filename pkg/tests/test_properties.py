import random

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from finframe.frame import OMEGA, Arity, Frame, ideal_closure, is_k_ideal, k_ideals
from finframe.generate import downset_frame, frame_corpus, random_poset, random_presentation
from finframe.poset import FinitePoset, is_distributive
from finframe.stone import counit_check, point_space, points, unit_check
from finframe.ttg import closure, ideal_violation, prime_tensor_ideals, quotient_frame, rad_lattice

from . import oracles

seeds = st.integers(0, 2**32 - 1)
arities = st.sampled_from([Arity(2), Arity(3), Arity(4), OMEGA])


def _with_bottom(P: FinitePoset) -> FinitePoset:
    n = len(P)
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[0, :] = True
    leq[1:, 1:] = P.leq
    return FinitePoset(("0",) + P.elements, leq)


@st.composite
def bottomed_posets(draw, max_size=6):
    rng = random.Random(draw(seeds))
    return _with_bottom(random_poset(rng, rng.randint(0, max_size - 1), rng.random()))


@st.composite
def presentations(draw, all_coproducts=True):
    return random_presentation(random.Random(draw(seeds)), 7, all_coproducts)


@given(bottomed_posets(), arities, st.data())
def test_ideal_closure_is_a_closure(P, arity, data):
    a = data.draw(st.integers(0, P.full))
    b = data.draw(st.integers(0, P.full))
    ca = ideal_closure(P, a, arity)
    assert a & ~ca == 0
    assert ideal_closure(P, ca, arity) == ca
    assert is_k_ideal(P, ca, arity)
    assert ideal_closure(P, a & b, arity) & ~ca == 0


@given(bottomed_posets())
def test_ideals_shrink_with_arity(P):
    families = [set(k_ideals(P, k).ideals) for k in (Arity(2), Arity(3), Arity(4), OMEGA)]
    for small, large in zip(families, families[1:]):
        assert large <= small


@given(bottomed_posets(5), arities)
def test_ideals_match_oracle(P, arity):
    els, le = oracles.order(P)
    brute = sorted(P.mask(S) for S in oracles.k_ideals(els, le, arity.k))
    assert sorted(k_ideals(P, arity).ideals) == brute


@given(st.sampled_from(frame_corpus(6)), arities)
def test_ideals_of_distributive_lattices_form_frames(F, arity):
    assert is_distributive(k_ideals(F.poset, arity).lattice())


@given(st.builds(random_poset, st.builds(random.Random, seeds), st.integers(1, 5), st.floats(0, 1)))
def test_downset_frames_have_one_point_per_element(P):
    F = downset_frame(P)
    assert len(points(F)) == len(P)
    assert counit_check(F).ok
    assert unit_check(point_space(F)).ok


@given(presentations(False), arities, st.data())
def test_ttg_closure_is_a_closure(T, arity, data):
    a = data.draw(st.integers(0, T.full))
    b = data.draw(st.integers(0, T.full))
    ca = closure(T, a, arity)
    assert a & ~ca == 0
    assert closure(T, ca, arity) == ca
    assert closure(T, a & b, arity) & ~ca == 0
    assert ideal_violation(T, ca, arity) is None
    assert closure(T, a, arity, radical=False) & ~ca == 0


@given(presentations(False), st.sampled_from([Arity(3), OMEGA]))
def test_rad_is_a_frame(T, arity):
    RF = rad_lattice(T, arity)
    els, le = oracles.order(RF.frame.poset)
    assert oracles.is_distributive(els, le)
    for i, A in enumerate(RF.ideals):
        for j, B in enumerate(RF.ideals):
            assert RF.ideals[RF.frame.meet(i, j)] == A & B


@given(presentations())
def test_primes_are_prime_elements(T):
    RF = rad_lattice(T)
    els, le = oracles.order(RF.frame.poset)
    expected = sorted(RF.ideals[RF.frame.index(p)] for p in oracles.primes(els, le))
    assert sorted(P.carrier for P in prime_tensor_ideals(T)) == expected


@given(presentations(), st.data())
def test_quotient_points_are_the_closed_complement(T, data):
    RF = rad_lattice(T)
    S = data.draw(st.sampled_from(RF.ideals))
    Q = quotient_frame(T, S)
    F: Frame = RF.frame
    outside = [x.name for x in points(F) if not F.le(RF.position(S), x.prime)]
    kept = sorted(Q.points.values())
    assert kept == sorted(x.name for x in points(F) if x.name not in outside)
