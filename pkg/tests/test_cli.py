import json
import os
import subprocess
import sys

import jsonschema
import pytest

from bfc import explorer
from bfc.cli import run

from conftest import schema


@pytest.fixture
def bfc(capsys):
    def invoke(*args):
        code = run(list(args))
        out, err = capsys.readouterr()
        return code, out, err
    return invoke


def as_json(out, name):
    doc = json.loads(out)
    jsonschema.validate(doc, schema(name))
    return doc


def test_measures_example(bfc):
    code, out, _ = bfc("measures", "--fn", "zoo:and_of_ors:k=3", "--set", "s,bs,C,deg")
    assert code == 0
    doc = as_json(out, "measures")
    assert {k: v["exact"] for k, v in doc["measures"].items()} == {"s": 3, "bs": 3, "C": 3, "deg": 9}
    assert doc["meta"]["command"] == "measures"


def test_measures_over_limit_emits_bounds(bfc):
    code, out, _ = bfc("measures", "--fn", "zoo:chakraborty:k=8,n=512", "--set", "D")
    assert code == 2
    d = as_json(out, "measures")["measures"]["D"]
    assert d["lo"] <= d["hi"] == 512


def test_plain_equals_exact(bfc):
    for name in ("s", "bs", "C", "D", "deg", "degf2", "dpar"):
        _, out, _ = bfc("measures", "--fn", "zoo:kushilevitz_h", "--set", name)
        exact = json.loads(out)["measures"][name]["exact"]
        code, plain, _ = bfc("measures", "--fn", "zoo:kushilevitz_h", "--set", name, "--plain")
        assert code == 0 and plain.strip() == str(exact)


def test_exit_codes_stable_across_formats(bfc):
    cases = [
        (("measures", "--fn", "tt:2:8"), 0),
        (("measures", "--fn", "tt:2:1F"), 1),
        (("measures", "--fn", "zoo:chakraborty:n=64", "--set", "s"), 2),
        (("zoo", "make", "--name", "kushilevitz", "--levels", "2"), 2),
        (("rank", "--fn", "zoo:parity:n=11", "--op", "and"), 2),
        (("scan", "--n", "6"), 2),
        (("measures", "--fn", "tt:2:8", "--limit", "bogus=3"), 1),
    ]
    for args, want in cases:
        for fmt in ("--json", "--plain", "--csv"):
            assert bfc(*args, fmt)[0] == want, (args, fmt)


def test_error_payload(bfc):
    code, out, err = bfc("measures", "--fn", "tt:2:1F")
    assert code == 1
    doc = as_json(out, "error")
    assert doc["error"]["kind"] == "domain" and "position" in doc["error"]["message"]
    assert "^" in err


def test_usage_error_is_domain(bfc):
    assert bfc("rank", "--fn", "tt:2:8", "--op", "nand")[0] == 1
    assert bfc("nosuchcommand")[0] == 1


def test_pointwise(bfc):
    code, out, _ = bfc("measures", "--fn", "tt:2:8", "--at", "11", "--set", "s,bs,C")
    doc = as_json(out, "measures")
    assert code == 0
    assert doc["pointwise"] == {"s": {"exact": 2}, "bs": {"exact": 2}, "C": {"exact": 2}}
    code, out, _ = bfc("measures", "--fn", "zoo:chakraborty:k=8:n=64", "--at", "0xff1f1f1f1f1f1f03",
                       "--set", "s")
    assert code == 0 and json.loads(out)["pointwise"]["s"]["exact"] == 46


def test_rank_example(bfc):
    code, out, _ = bfc("rank", "--fn", "tt:2:8", "--op", "xor", "--values", "pm")
    assert code == 0 and as_json(out, "rank")["rank"] == 4
    _, out, _ = bfc("rank", "--fn", "tt:2:8", "--op", "xor", "--values", "pm", "--plain")
    assert out.strip() == "4"
    _, out, _ = bfc("rank", "--fn", "zoo:parity:n=5", "--op", "and", "--method", "modular")
    assert json.loads(out)["method"] in ("modular", "exact")


def test_spectrum(bfc):
    code, out, _ = bfc("spectrum", "--fn", "tt:2:8")
    doc = as_json(out, "spectrum")
    assert code == 0
    assert doc["min"] == {"num": 1, "log2den": 1} and doc["l1"] == {"num": 2, "log2den": 0}
    assert [c["num"] for c in doc["support"]] == [2, 2, 2, -2]
    _, out, _ = bfc("spectrum", "--fn", "tt:2:8", "--csv")
    assert out.splitlines()[0] == "S,num,log2den"


def test_shi(bfc):
    code, out, _ = bfc("shi", "--fn", "tt:2:8", "--line", "00,11", "--t", "1")
    doc = as_json(out, "shi")
    assert code == 0 and doc["line"]["derivative"] == {"num": 2, "den": 1}
    code, out, _ = bfc("shi", "--fn", "zoo:rubinstein:k=2", "--sweep", "--antipodal", "1000")
    doc = as_json(out, "shi")
    assert doc["sweep"]["attained"] and doc["antipodal"]["derivative"] == doc["antipodal"]["s_at"]
    code, out, _ = bfc("shi", "--fn", "tt:2:8", "--line", "0:1/2,1:1", "--t", "1/3")
    assert code == 0 and as_json(out, "shi")["line"]["t"] == {"num": 1, "den": 3}


def test_zoo_commands(bfc):
    code, out, _ = bfc("zoo", "list")
    assert code == 0 and "rubinstein" in [e["name"] for e in as_json(out, "zoo_list")["zoo"]]
    code, out, _ = bfc("zoo", "make", "--name", "and", "--n", "2", "--emit", "tt")
    assert code == 0 and out.strip() == "tt:2:8"
    code, out, _ = bfc("zoo", "make", "--name", "chakraborty", "--n", "64")
    assert code == 0 and as_json(out, "zoo_make")["dense"] is False
    code, out, _ = bfc("zoo", "verify", "--name", "rubinstein", "--k", "3")
    doc = as_json(out, "zoo_verify")
    assert code == 0 and doc["passed"]
    code, out, _ = bfc("zoo", "verify", "--name", "kushilevitz", "--levels", "2")
    assert code == 2


def test_gl(bfc, tmp_path):
    code, out, _ = bfc("gl", "--fn", "zoo:and_of_ors:k=3")
    doc = as_json(out, "gl")
    assert code == 0 and doc["gamma"] == 3 and doc["vertices"] == 257
    path = tmp_path / "g.txt"
    path.write_text("vs:2:9\n")
    code, out, _ = bfc("gl", "--graph", str(path))
    doc = as_json(out, "gl")
    assert doc["fn"] == "tt:2:0" and doc["balanced"]
    assert bfc("gl")[0] == 1


def test_lattice(bfc):
    code, out, _ = bfc("lattice", "--fn", "tt:2:E", "--input", "00", "--blocks", "1|2", "--radius", "2")
    doc = as_json(out, "lattice")
    assert code == 0
    assert doc["box"] == {"value": 4, "radius": 2, "exact": True} and doc["sensitivity"] == 4
    assert doc["nontrivial"] and doc["bound"] == 4
    code, out, _ = bfc("lattice", "--fn", "zoo:rubinstein:k=3", "--auto-blocks")
    doc = as_json(out, "lattice")
    assert code == 0 and doc["b"] == 6 and doc["sensitivity"] <= doc["bound"]
    code, out, _ = bfc("lattice", "--fn", "tt:2:8", "--input", "00", "--blocks", "1|2", "--strict")
    assert code == 1


def test_scan_and_report(bfc, tmp_path):
    sink = tmp_path / "r.jsonl"
    code, out, _ = bfc("scan", "--n", "3", "--out", str(sink))
    doc = as_json(out, "scan")
    assert code == 0 and doc["records"] == 256 and doc["violations"] == 0
    code, out, _ = bfc("report", "--in", str(sink))
    assert code == 0 and as_json(out, "report")["records"] == 256
    code, out, _ = bfc("report", "--in", str(sink), "--format", "csv")
    assert len(out.strip().splitlines()) == 257
    code, out, _ = bfc("report", "--in", str(sink), "--format", "md")
    assert out.startswith("# Scan report")
    for line in sink.read_text().splitlines()[1:]:
        obj = json.loads(line)
        if "checkpoint" not in obj:
            jsonschema.validate(obj, schema("scan_record"))


def test_relation_violation_exits_3(bfc, monkeypatch):
    real = explorer.compute_record

    def tampered(f, limits=None):
        r = real(f, limits)
        return r.__class__(**{**r.__dict__, "bs": r.n + 1}) if r.table == 0b1000 else r

    monkeypatch.setattr(explorer, "compute_record", tampered)
    code, out, _ = bfc("scan", "--n", "2")
    doc = as_json(out, "error")
    assert code == 3 and doc["error"]["kind"] == "invariant"
    assert doc["error"]["record"]["table"] == 8 and "tt:2:8" in doc["error"]["message"]


def test_identical_invocations_identical_output(bfc):
    args = ("measures", "--fn", "compose(zoo:rubinstein:k=2,tt:1:2)")
    first = bfc(*args)
    assert first == bfc(*args)


def test_limit_override_via_environment():
    env = dict(os.environ, BFC_BS_LIMIT="4")
    out = subprocess.run([sys.executable, "-m", "bfc.cli", "measures", "--fn", "zoo:rubinstein:k=3",
                          "--set", "bs"], env=env, capture_output=True, text=True)
    assert out.returncode == 2
    doc = json.loads(out.stdout)
    assert doc["meta"]["limits"]["bs"] == 4 and "lo" in doc["measures"]["bs"]
