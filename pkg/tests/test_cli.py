import json
import os

import pytest

from linsusp.cli import main
from linsusp.gog import DehnTwist, Splitting
from linsusp.serialize import splitting_to_dict, twist_to_dict


@pytest.fixture()
def ex1_doc(tmp_path, ex1, ex1_twist):
    doc = splitting_to_dict(ex1)
    doc["twist"] = twist_to_dict(ex1_twist)
    path = tmp_path / "ex1.json"
    path.write_text(json.dumps(doc))
    return str(path), doc


def run(capsys, *args):
    rc = main(list(args))
    out = capsys.readouterr().out
    return rc, json.loads(out) if out.strip() else None


def test_validate_ok(capsys, ex1_doc):
    path, _ = ex1_doc
    rc, out = run(capsys, "validate", "--in", path)
    assert rc == 0 and out["valid"]


def test_validate_flags(capsys, tmp_path):
    bad = {"vertices": [{"id": 0, "color": "white", "rank": 1},
                        {"id": 1, "color": "white", "rank": 1}],
           "edges": [{"id": 0, "from": 0, "to": 1, "fwd_image": "a",
                      "bwd_image": "a"}],
           "basepoint": 0}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    rc, out = run(capsys, "validate", "--in", str(p))
    assert rc == 1 and not out["valid"]


def test_suspend_and_nf(capsys, ex1_doc, tmp_path):
    path, _ = ex1_doc
    susp = tmp_path / "susp.json"
    rc, _ = run(capsys, "suspend", "--in", path, "--out", str(susp))
    assert rc == 0
    # the emitted document re-parses and re-validates
    doc = json.loads(susp.read_text())
    rc, out = run(capsys, "nf", "--in", str(susp), "--element", "c",
                  "--polarize", "0")
    assert rc == 0
    assert out["abscissa"] == 0 and len(out["path"]) == 4
    assert out["dcr"][1] == "b"


def test_conj_exit_codes(capsys, ex1_doc, tmp_path):
    path, _ = ex1_doc
    susp = tmp_path / "susp.json"
    run(capsys, "suspend", "--in", path, "--out", str(susp))
    rc, out = run(capsys, "conj", "--in", str(susp), "a", "b")
    assert rc == 1 and not out["conjugate"]
    rc, out = run(capsys, "conj", "--in", str(susp), "a", "Cac")
    assert rc == 0 and out["conjugate"]


def test_short(capsys, ex1_doc, tmp_path):
    path, _ = ex1_doc
    susp = tmp_path / "susp.json"
    run(capsys, "suspend", "--in", path, "--out", str(susp))
    rc, out = run(capsys, "short", "--in", str(susp), "--element", "bc")
    assert rc == 0 and out["translation_length"] == 4
    assert 0 < len(out["short_positions"]) <= 2


def test_mwp_command(capsys, ex1_doc, tmp_path):
    path, doc = ex1_doc
    q = {"suspension": doc, "S": [["c"]],
         "T": [[{"fiber": "Aca", "t": 0}]]}
    qp = tmp_path / "q.json"
    qp.write_text(json.dumps(q))
    rc, out = run(capsys, "mwp", "--in", str(qp))
    assert rc == 0 and out["decision"] == "yes"
    assert out["conjugators"] == [{"fiber": "a", "t": 0}]
    q2 = {"suspension": doc, "S": [["a"]], "T": [["b"]]}
    qp2 = tmp_path / "q2.json"
    qp2.write_text(json.dumps(q2))
    rc, out = run(capsys, "mwp", "--in", str(qp2))
    assert rc == 1 and out["decision"] == "no"


def test_iso_command(capsys, ex1_doc, tmp_path):
    path, doc = ex1_doc
    d2 = dict(doc)
    d2["twist"] = {"gamma": {"1": 2}}
    p2 = tmp_path / "ex1sq.json"
    p2.write_text(json.dumps(d2))
    rc, out = run(capsys, "iso", "--in", path, "--in2", str(p2))
    assert rc == 1 and not out["conjugate"]
    rc, out = run(capsys, "iso", "--in", path, "--in2", path)
    assert rc == 0 and out["conjugate"]


def test_whitehead_and_gersten(capsys):
    rc, out = run(capsys, "whitehead-orbit", "--rank", "2",
                  "--src", "ab", "--dst", "aabb")
    assert rc == 1
    rc, out = run(capsys, "whitehead-orbit", "--rank", "2",
                  "--src", "a", "--dst", "b")
    assert rc == 0 and "automorphism" in out
    rc, out = run(capsys, "gersten", "--rank", "2", "--src", "a",
                  "--dst", "ab")
    assert rc == 0


def test_snf_command(capsys):
    rc, out = run(capsys, "snf", "[[2,4],[6,8]]")
    assert rc == 0
    assert out["D"] == [[2, 0], [0, 4]]


def test_growth_command(capsys, ex1_doc):
    path, _ = ex1_doc
    rc, out = run(capsys, "growth", "--in", path, "--element", "c", "--n", "6")
    assert rc == 0 and out["cyclic_lengths"] == [1] * 7


def test_bad_input(capsys, tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    rc = main(["validate", "--in", str(p)])
    assert rc == 3
