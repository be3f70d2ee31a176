import pytest

from finframe.errors import CycleDetected, DuplicateElement, FormatError, InvalidMorphism, UnknownElement
from finframe.formats import (
    dump_poset,
    dump_ttg,
    load_frmmap,
    load_poset,
    load_space,
    load_support,
    load_ttg,
    parse_frmmap,
    parse_poset,
    parse_space,
    parse_ttg,
)
from finframe.generate import chain3, posets, signed_chain3, subs2
from finframe.poset import find_isomorphism
from finframe.ttg import validate_support


def test_parse_poset_with_comments():
    P = parse_poset("# diamond\nelem 0 a b 1\ncover 0 a  # a above 0\ncover 0 b\n\ncover a 1\ncover b 1\n")
    assert P.elements == ("0", "a", "b", "1")
    assert P.covers() == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_leq_is_closed_transitively():
    P = parse_poset("elem x y z\nleq x y\nleq y z\n")
    assert P.le(0, 2)


def test_poset_errors():
    with pytest.raises(FormatError, match="line 2"):
        parse_poset("elem a\nfoo a\n")
    with pytest.raises(FormatError):
        parse_poset("elem a b\ncover a\n")
    with pytest.raises(FormatError):
        parse_poset("elem\n")
    with pytest.raises(CycleDetected):
        parse_poset("elem a b\ncover a b\ncover b a\n")
    with pytest.raises(UnknownElement):
        parse_poset("elem a\ncover a z\n")
    with pytest.raises(DuplicateElement):
        parse_poset("elem a a\n")


def test_poset_round_trip():
    for n in range(1, 5):
        for P in posets(n):
            Q = parse_poset(dump_poset(P))
            assert Q.elements == P.elements
            assert (Q.leq == P.leq).all()


def test_parse_space():
    X = parse_space("point x y\nopen\nopen x\nopen x y\n")
    assert X.points == ("x", "y")
    assert len(X.opens) == 3
    with pytest.raises(DuplicateElement):
        parse_space("point x x\nopen\nopen x\n")
    with pytest.raises(FormatError):
        parse_space("point x\nclosed x\n")


def test_parse_ttg():
    T = parse_ttg(
        "object z a u\nunit u\nzero z\n"
        "tensor z z z\ntensor z a z\ntensor z u z\ntensor a a a\ntensor a u a\ntensor u u u\n"
    )
    assert T.objects == ("z", "a", "u")
    assert T.tensor_of("a", "u") == "a"
    assert T.tensor_of("u", "a") == "a"


def test_ttg_errors():
    with pytest.raises(FormatError, match="unit"):
        parse_ttg("object z\nzero z\ntensor z z z\n")
    with pytest.raises(DuplicateElement):
        parse_ttg("object z z\n")
    with pytest.raises(FormatError, match="two values"):
        parse_ttg("object z u\nunit u\nzero z\ntensor z u z\ntensor u z u\n")
    with pytest.raises(FormatError):
        parse_ttg("object z u\nunit u\nzero z\ncoprod u z\n")


def test_ttg_round_trip():
    for make in (subs2, chain3, signed_chain3):
        T = make()
        U = parse_ttg(dump_ttg(T))
        assert U.objects == T.objects
        assert (U.tensor == T.tensor).all()
        assert U.shift == T.shift
        assert U.rotated_triangles() == T.rotated_triangles()
        assert U.summand_down() == T.summand_down()
        assert U.coproducts == T.coproducts


def test_data_files(data_dir):
    assert find_isomorphism(load_poset(data_dir / "b2.poset"), load_poset(data_dir / "m3.poset")) is None
    assert len(load_space(data_dir / "sierpinski.space").opens) == 3
    assert dump_ttg(load_ttg(data_dir / "subs2.ttg")) == dump_ttg(subs2())


def test_support_file(data_dir):
    T = load_ttg(data_dir / "subs2.ttg")
    assert validate_support(T, load_support(data_dir / "subs2_b2.support", T))
    bad = validate_support(T, load_support(data_dir / "subs2_top.support", T))
    assert bad.witness == ("S1", ("zero", "e"))


def test_frmmap(data_dir):
    spec = parse_frmmap((data_dir / "c3_b2.frmmap").read_text(), data_dir)
    assert spec.mapping == {"0": "0", "m": "a", "1": "1"}
    cache = {}
    phi = load_frmmap(data_dir / "c3_b2.frmmap", cache)
    psi = load_frmmap(data_dir / "b2_b2.frmmap", cache)
    assert phi.target is psi.source
    with pytest.raises(FormatError):
        parse_frmmap("source a.poset\nmap 0 0\n")
    with pytest.raises(DuplicateElement):
        parse_frmmap("source a\ntarget b\nmap 0 0\nmap 0 1\n")


def test_frmmap_must_be_morphism(tmp_path, data_dir):
    (tmp_path / "b2.poset").write_text((data_dir / "b2.poset").read_text())
    (tmp_path / "bad.frmmap").write_text("source b2.poset\ntarget b2.poset\nmap 0 0\nmap a 1\nmap b 1\nmap 1 1\n")
    with pytest.raises(InvalidMorphism):
        load_frmmap(tmp_path / "bad.frmmap")
