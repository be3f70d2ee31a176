"""One test per acceptance criterion; each prints a PASS/FAIL line and the
session summary repeats them (see conftest)."""

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager

from finframe.cli import run
from finframe.frame import OMEGA, Arity, Frame, completion_round_trip, is_k_coherent, k_ideals
from finframe.generate import (
    b2,
    c3,
    distributive_lattices,
    frame_corpus,
    p6,
    random_chains,
    random_presentation,
    subs2,
    triple_join,
)
from finframe.hochster import double_dual_check, hochster_dual, thomason_correspondence
from finframe.poset import is_distributive
from finframe.refine import FrameMorphism, StratChain, bij_points_check, downset_open_check, strat_chain_check
from finframe.stone import counit_check, point_space, points, unit_check
from finframe.ttg import (
    closure,
    coproduct_join_check,
    ext_res,
    prime_tensor_ideals,
    principal_compact_check,
    quotient_frame,
    rad_lattice,
    restrict,
    support_data,
    universal_morphism,
)

from . import oracles
from .test_cli import CASES, DATA, GOLDEN

ARITIES = (Arity(2), Arity(3), Arity(4), OMEGA)


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as err:
        print(f"CRITERION {number} FAIL {title}: {type(err).__name__}: {err}")
        raise
    print(f"CRITERION {number} PASS {title} ({time.perf_counter() - start:.2f}s)")


def test_criterion_1_quiver_lattice(monkeypatch):
    with criterion(1, "five-element lattice with three incomparable middles is not distributive"):
        monkeypatch.chdir(DATA)
        start = time.perf_counter()
        code, text = run(["check", "m3.poset"])
        elapsed = time.perf_counter() - start
        out = json.loads(text)["results"][0]
        assert out["elements"] == 5
        assert out["lattice"] is True and out["distributive"] is False
        assert sorted(out["witness"]) == ["c", "p0", "p1"]
        assert code == 1
        assert elapsed < 1


def test_criterion_2_completion_equivalence():
    with criterion(2, "completion round trip on every distributive lattice up to 6 elements"):
        start = time.perf_counter()
        counts = [len(distributive_lattices(n)) for n in range(1, 7)]
        assert counts == [1, 1, 1, 2, 3, 5]
        failures = []
        for n in range(1, 7):
            for F in distributive_lattices(n):
                report = completion_round_trip(F, OMEGA)
                if not (report.ok and report.details["phi"]["surjective"]):
                    failures.append(F.elements)
        assert failures == []
        assert time.perf_counter() - start < 30


def _idl_distributive_failures(P):
    out = []
    for arity in ARITIES:
        verdict = is_distributive(k_ideals(P, arity).lattice())
        if not verdict:
            out.append((str(arity), verdict.witness))
    return out


def test_criterion_3_ideal_frames():
    with criterion(3, "k-ideals form frames on the corpus and P6; Idl_3(P6) differs from Idl_4(P6)"):
        failures = []
        for F in frame_corpus(6):
            failures += _idl_distributive_failures(F.poset)
        failures += _idl_distributive_failures(p6())
        differ = k_ideals(p6(), 3).ideals != k_ideals(p6(), 4).ideals
        assert failures == [] and differ, {"non_distributive": failures, "idl3_differs_from_idl4": differ}


def test_criterion_3_triple_join_stratification():
    with criterion("3b", "k-ideals of the triple-join poset form frames and Idl_3 differs from Idl_4"):
        P = triple_join()
        assert _idl_distributive_failures(P) == []
        assert len(k_ideals(P, 3)) == 26 and len(k_ideals(P, 4)) == 18


def test_criterion_4_stone_duality():
    with criterion(4, "unit and counit round trips; points match two-valued maps"):
        corpus = frame_corpus(6)
        for F in corpus:
            assert counit_check(F).ok
            assert unit_check(point_space(F)).ok
            els, le = oracles.order(F.poset)
            brute = sorted(tuple(f[a] for a in els) for f in oracles.two_valued_maps(els, le))
            assert sorted(x.table() for x in points(F)) == brute
            assert {F.name(x.prime) for x in points(F)} == oracles.primes(els, le)


def test_criterion_5_hochster():
    with criterion(5, "double dual, point counts and Thomason correspondence"):
        thomason = 0
        for F in frame_corpus(6):
            assert double_dual_check(F).ok
            assert len(points(F)) == len(points(hochster_dual(F).frame))
            if len(points(F)) <= 4:
                assert thomason_correspondence(F).ok
                thomason += 1
        # every corpus frame except the 6-chain, which has 5 points
        assert thomason == 12


def test_criterion_6_bij_points():
    with criterion(6, "bijective points on 1000 random chains; down-set opens on the corpus"):
        start = time.perf_counter()
        count = bijective = 0
        for phi, psi in random_chains(1000, seed=0):
            report = bij_points_check(phi, psi)
            for key in ("strongly_visible_phi", "strongly_visible_comp"):
                assert "applicable" in report.details[key]
            for key in ("maximal_honest_phi", "maximal_honest_psi", "maximal_honest_comp"):
                assert "applicable" in report.details[key]
            bijective += report.details["bijective"]
            count += 1
        assert count == 1000 and 0 < bijective < 1000
        for F in frame_corpus(6):
            for arity in ARITIES:
                if is_k_coherent(F, arity):
                    assert downset_open_check(F, arity).ok
        assert time.perf_counter() - start < 60


def _engine_checks(T, frames):
    rad_lattice(T)
    assert coproduct_join_check(T).ok
    assert principal_compact_check(T).ok
    RF = rad_lattice(T)
    els, le = oracles.order(RF.frame.poset)
    expected = sorted(RF.ideals[RF.frame.index(p)] for p in oracles.primes(els, le))
    assert sorted(P.carrier for P in prime_tensor_ideals(T)) == expected
    supports = 0
    for F in frames:
        for D in support_data(T, F):
            universal_morphism(T, D)
            supports += 1
    return supports


def test_criterion_7_ttg_engine():
    with criterion(7, "radical frame, coproduct joins, principal compacts, primes and universal supports"):
        start = time.perf_counter()
        frames = frame_corpus(5)
        supports = _engine_checks(subs2(), frames)
        rng = random.Random(0)
        for _ in range(100):
            supports += _engine_checks(random_presentation(rng), frames)
        assert supports > 100
        assert time.perf_counter() - start < 120


def test_criterion_8_finite_analog():
    with criterion(8, "extension-restriction, quotient points and Sierpinski-to-discrete refinement"):
        T = subs2()
        configs = 0
        for sub in range(1 << len(T)):
            try:
                restrict(T, sub)
            except Exception:
                continue
            if closure(T, sub, radical=False, tensor=False) != T.full:
                continue
            for arity in (Arity(2), Arity(3), OMEGA):
                details = ext_res(T, sub, arity).details
                assert details["injective"]
            configs += 1
        assert configs == 4
        RF = rad_lattice(T)
        for S in RF.ideals:
            Q = quotient_frame(T, S)
            F = RF.frame
            kept = sorted(x.name for x in points(F) if F.le(RF.position(S), x.prime))
            assert sorted(Q.points.values()) == kept
        F, G = Frame.from_poset(c3()), Frame.from_poset(b2())
        phi = FrameMorphism.from_mapping(F, G, {"0": "0", "m": "a", "1": "1"})
        report = strat_chain_check(StratChain((phi,)))
        assert [s["opens"] for s in report.details["stages"]] == [3, 4]
        assert report.details["stages"][1]["refined"]


def test_criterion_9_determinism():
    with criterion(9, "every golden CLI invocation is byte-reproducible"):
        for name, argv, code in CASES:
            runs = [
                subprocess.run([sys.executable, "-m", "finframe", *argv], cwd=DATA, capture_output=True)
                for _ in range(2)
            ]
            assert runs[0].stdout == runs[1].stdout
            assert runs[0].returncode == runs[1].returncode == code
            assert runs[0].stdout == (GOLDEN / f"{name}.out").read_bytes()
