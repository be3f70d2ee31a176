import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from finframe.cli import emit_json, run

DATA = Path(__file__).resolve().parent.parent / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"

# name, argv (relative to data/), exit code
CASES = [
    ("check_m3", ["check", "m3.poset"], 1),
    ("check_b2", ["check", "b2.poset"], 0),
    ("check_p6", ["check", "p6.poset"], 1),
    ("check_cycle", ["check", "cycle.poset"], 2),
    ("check_missing", ["check", "missing.poset"], 2),
    ("idl_b2_2", ["idl", "b2.poset", "--arity", "2"], 0),
    ("idl_p6_3", ["idl", "p6.poset", "--arity", "3"], 1),
    ("idl_triple_4", ["idl", "triple.poset", "--arity", "4"], 0),
    ("points_b2", ["points", "b2.poset"], 0),
    ("space_c3", ["space", "c3.poset"], 0),
    ("space_sierpinski", ["space", "sierpinski.space"], 0),
    ("dual_c3", ["dual", "c3.poset"], 0),
    ("dim_c3", ["dim", "c3.poset"], 0),
    ("refine_c3_b2", ["refine", "c3_b2.frmmap", "b2_b2.frmmap"], 0),
    ("ttg_rad", ["ttg", "subs2.ttg", "rad"], 0),
    ("ttg_frame", ["ttg", "subs2.ttg", "frame", "--arity", "3"], 0),
    ("ttg_spc", ["ttg", "subs2.ttg", "spc"], 0),
    ("ttg_support", ["ttg", "subs2.ttg", "support", "subs2_b2.support"], 0),
    ("ttg_support_bad", ["ttg", "subs2.ttg", "support", "subs2_top.support"], 1),
    ("ttg_quotient", ["ttg", "subs2.ttg", "quotient", "e,1"], 0),
    ("ttg_quotient_close", ["ttg", "subs2.ttg", "quotient", "12", "--close"], 0),
    ("ttg_quotient_bad", ["ttg", "subs2.ttg", "quotient", "e,12"], 1),
    ("ttg_extres", ["ttg", "subs2.ttg", "extres", "--sub", "e,1,12", "--arity", "3"], 0),
    ("ttg_chain3_spc", ["ttg", "chain3.ttg", "spc"], 0),
    ("render_b2_dot", ["render", "b2.poset", "--dot"], 0),
    ("render_c3_spectrum", ["render", "c3.poset", "--dot", "--spectrum"], 0),
    ("render_subs2", ["render", "subs2.ttg", "--dot"], 0),
    ("render_json", ["render", "sierpinski.space"], 0),
    ("search", ["search", "--count", "10"], 0),
    ("search_seed", ["search", "--count", "10", "--seed", "3"], 0),
]

DOT_LINE = re.compile(r'^  (rankdir=BT;|"[^"]+";|"[^"]+" -> "[^"]+";)$')


def _run(argv, monkeypatch):
    monkeypatch.chdir(DATA)
    return run(argv)


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, monkeypatch):
    got_code, text = _run(argv, monkeypatch)
    assert got_code == code
    assert text == (GOLDEN / f"{name}.out").read_text(encoding="utf-8")


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_byte_reproducible(name, argv, code, monkeypatch):
    assert _run(argv, monkeypatch) == _run(argv, monkeypatch)


def test_json_envelope(monkeypatch):
    for name, argv, _ in CASES:
        if "--dot" in argv:
            continue
        doc = json.loads(_run(argv, monkeypatch)[1])
        assert list(doc) == ["version", "results"] and doc["version"] == 1
        assert doc["results"][0]["command"] == argv[0]


def test_dot_grammar(monkeypatch):
    for name, argv, _ in CASES:
        if "--dot" not in argv:
            continue
        lines = _run(argv, monkeypatch)[1].splitlines()
        assert re.fullmatch(r"digraph (poset|spectrum) \{", lines[0])
        assert lines[-1] == "}"
        assert all(DOT_LINE.match(line) for line in lines[1:-1]), name


def test_m3_witness(monkeypatch):
    doc = json.loads(_run(["check", "m3.poset"], monkeypatch)[1])["results"][0]
    assert doc["lattice"] is True and doc["distributive"] is False
    assert sorted(doc["witness"]) == ["c", "p0", "p1"]


def test_seed_defaults_to_zero(monkeypatch):
    a = _run(["search", "--count", "10"], monkeypatch)[1]
    b = _run(["search", "--count", "10", "--seed", "0"], monkeypatch)[1]
    assert a == b


def test_bad_arity_is_usage_error(monkeypatch):
    with pytest.raises(SystemExit) as info:
        _run(["idl", "b2.poset", "--arity", "zero"], monkeypatch)
    assert info.value.code == 2


def test_emit_json_key_order():
    assert emit_json([{"b": 1, "a": [2]}]) == '{"version":1,"results":[{"a":[2],"b":1}]}\n'


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "finframe", "check", "b2.poset"], cwd=DATA, capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "check_b2.out").read_text(encoding="utf-8")


if __name__ == "__main__":
    # regenerate the golden files after an intentional output change
    import os

    os.chdir(DATA)
    for name, argv, _ in CASES:
        (GOLDEN / f"{name}.out").write_text(run(argv)[1], encoding="utf-8")
