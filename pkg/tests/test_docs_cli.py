import json
import random
from fractions import Fraction

import pytest

from flatchain import cli, docio, verify
from flatchain.chains import CoordChain, box_chain, iv, pt, single_cell
from flatchain.deform import staircase_chain
from flatchain.errors import ValidationError
from flatchain.groups import (ChainCoefficients, Integers, Rationals,
                              Residues)
from flatchain.randgen import rand_coord_chain, rand_figure, rand_tensor_chain
from flatchain.simplices import Simplex, SimplexChain
from flatchain.tensor import Split

INT = Integers()


def _roundtrip(chain):
    doc = docio.chain_to_doc(chain)
    text = docio.dumps(doc)
    back = docio.doc_to_chain(json.loads(text))
    return back, docio.dumps(docio.chain_to_doc(back))


def test_roundtrip_all_descriptors():
    rng = random.Random(1)
    groups = [INT, Rationals(), Residues(6)]
    for g in groups:
        for _ in range(10):
            c = rand_coord_chain(rng, rng.randint(1, 3), 1, g, terms=2)
            back, text = _roundtrip(c)
            assert back == c
            assert text == docio.dumps(docio.chain_to_doc(c))


def test_roundtrip_nested_coefficients():
    inner = CoordChain.build(1, 1, INT, [((iv(0, 2),), 3)])
    g = ChainCoefficients(1, 1, INT)
    c = CoordChain.build(1, 0, g, [((pt(Fraction(1, 2)),), inner)])
    back, _ = _roundtrip(c)
    assert back == c


def test_roundtrip_tensor_and_simplex():
    rng = random.Random(2)
    t = rand_tensor_chain(rng, Split(1, 1), 0, 1, INT, terms=2)
    back, _ = _roundtrip(t)
    assert back.body == t.body and back.k1 == t.k1
    s = SimplexChain.build(2, 1, INT, [(Simplex(((0, 0), (3, 4))), 2)])
    back, _ = _roundtrip(s)
    assert back == s


def test_figure_roundtrip():
    fig = rand_figure(random.Random(3), 2, boxes=2)
    back = docio.obj_to_figure(docio.figure_to_obj(fig))
    assert back == fig


def test_validation_diagnostics():
    doc = docio.chain_to_doc(box_chain(INT, [(0, 1)], 1))
    bad = json.loads(docio.dumps(doc))
    bad["terms"][0]["cell"][0] = {"iv": ["1", "0"]}
    with pytest.raises(ValidationError, match="axis 0"):
        docio.doc_to_chain(bad)
    bad2 = json.loads(docio.dumps(doc))
    bad2["terms"][0]["coeff"] = 0.5
    with pytest.raises(ValidationError):
        docio.doc_to_chain(bad2)
    with pytest.raises(ValidationError, match="format"):
        docio.doc_to_chain({"format": "nope"})


def test_noncanonical_document_rejected():
    c = single_cell(1, INT, [iv(0, 2)], 1)
    doc = docio.chain_to_doc(c)
    doc["terms"].append(json.loads(json.dumps(doc["terms"][0])))
    with pytest.raises(ValidationError, match="canonical"):
        docio.doc_to_chain(doc)


def _write(tmp_path, chain, name):
    path = tmp_path / name
    docio.save_chain(str(path), chain)
    return str(path)


def test_cli_compute_and_flatnorm(tmp_path, capsys):
    sq = box_chain(INT, [(0, 1), (0, 1)], 1)
    path = _write(tmp_path, sq, "square.json")
    assert cli.main(["compute", "mass", path]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "1"

    bpath = _write(tmp_path, sq.boundary(), "boundary.json")
    assert cli.main(["flatnorm", bpath, "--sweep", "1,2,4",
                     "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    values = [line.split(",")[0] for line in lines[1:]]
    assert values == ["1", "1", "1"]


def test_cli_slicemass_breakdown(tmp_path, capsys):
    stair = staircase_chain(INT.value(1), 3)
    path = _write(tmp_path, stair, "stair.json")
    assert cli.main(["compute", "slicemass", path]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "2"
    assert cli.main(["slicemass", path, "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert "total,2" in out


def test_cli_deform_and_average(tmp_path, capsys):
    seg = SimplexChain.build(2, 1, INT, [(Simplex(((0, 0), (3, 4))), 1)])
    path = _write(tmp_path, seg, "seg.json")
    out = str(tmp_path / "deformed.json")
    assert cli.main(["deform", path, "--eps", "1", "--shift", "1/7,1/9",
                     "--out", out]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mass"] == "7"
    deformed = docio.load_chain(out)
    assert deformed.mass() == 7
    assert cli.main(["avg-deform", path, "--eps", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "7"


def test_cli_jdecomp(tmp_path, capsys):
    bd = box_chain(INT, [(0, 1), (0, 1)], 1).boundary()
    path = _write(tmp_path, bd, "bd.json")
    assert cli.main(["compute", "jdecomp", path, "--split", "1,1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    masses = {tuple(c["bidegree"]): c["mass"] for c in payload["components"]}
    assert masses == {(0, 1): "2", (1, 0): "2"}


def test_cli_input_error_exit_code(tmp_path, capsys):
    missing = str(tmp_path / "missing.json")
    assert cli.main(["compute", "mass", missing]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{\"format\": \"nope\"}")
    assert cli.main(["compute", "mass", str(bad)]) == 2


def test_cli_verify_exit_codes(capsys):
    assert cli.main(["verify", "--suite", "coeff", "--seed", "1"]) == 0
    capsys.readouterr()
    with pytest.raises(SystemExit):
        cli.main(["verify", "--suite", "nonsense", "--bogus"])


def test_verify_determinism():
    a = verify.run_suite("cubchain", seed=42)
    b = verify.run_suite("cubchain", seed=42)
    assert a == b


def test_verify_mutation_sentinel():
    # a corrupted boundary sign must make the involution check fail
    def corrupted(c):
        out = c.boundary()
        if out.k >= 1 and out.terms:
            cell, val = out.terms[0]
            flipped = list(out.terms)
            flipped[0] = (cell, val.neg())
            return CoordChain(out.n, out.k, out.group, tuple(flipped))
        return out

    row = verify.check_boundary_squared(0, boundary=corrupted)
    assert not row.passed
    assert verify.check_boundary_squared(0).passed
