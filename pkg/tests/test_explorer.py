import dataclasses
import json
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given

from bfc import explorer, measures
from bfc.core import Permutation, TruthTable, negate_inputs, permute_inputs
from bfc.errors import DomainError, LimitExceeded, RelationViolation
from bfc.explorer import (GapLeaderboard, LogRatio, ScanRecord, build_report, check_relations, compute_record,
                          npn_canonical, read_records, records_csv, relation_failures, report_markdown, scan)

from conftest import schema, tables

AND2 = TruthTable.from_hex("tt:2:8")
OR2 = TruthTable.from_hex("tt:2:E")
NAND2 = TruthTable.from_hex("tt:2:7")


def test_scan_n2_and_n3():
    s2 = scan(2)
    assert (s2.records, s2.violations) == (16, 0)
    s3 = scan(3)
    assert s3.records == 256
    assert s3.leaderboard.entries["bs/s"].value == 1


def test_scan_gates():
    with pytest.raises(LimitExceeded):
        scan(6)
    with pytest.raises(LimitExceeded, match="hours"):
        scan(5)
    with pytest.raises(LimitExceeded):
        scan(5, npn=True)
    with pytest.raises(DomainError):
        scan(-1)


def test_npn_examples():
    assert npn_canonical(AND2) == npn_canonical(OR2) == npn_canonical(NAND2)
    p3 = TruthTable.from_hex("tt:3:96")
    assert npn_canonical(p3) == min(p3, p3.complement(), key=lambda t: t.bits)


@given(tables(max_n=4))
def test_npn_canonical_idempotent_and_invariant(f):
    c = npn_canonical(f)
    assert npn_canonical(c) == c
    assert c.bits <= f.bits
    assert npn_canonical(negate_inputs(f)) == c
    assert npn_canonical(f.complement()) == c
    if f.n >= 2:
        swap = Permutation.from_cycles("(1 2)", f.n)
        assert npn_canonical(permute_inputs(f, swap)) == c


def test_npn_class_counts():
    assert scan(3, npn=True).records == 14


@pytest.mark.parametrize("n", [1, 2, 3])
def test_npn_and_full_leaderboards_agree(n):
    full = scan(n).leaderboard.to_json()
    npn = scan(n, npn=True).leaderboard.to_json()
    assert full == npn


def test_relation_suite_catches_tampering():
    r = compute_record(TruthTable.from_hex("tt:3:E8"))
    assert relation_failures(r) == []
    bad = dataclasses.replace(r, bs=r.C + 1)
    with pytest.raises(RelationViolation, match="tt:3:E8"):
        check_relations(bad)
    assert relation_failures(dataclasses.replace(r, full_degree=not r.full_degree))
    assert relation_failures(dataclasses.replace(r, sparsity=4 ** r.dpar + 1))


def test_record_json_round_trip():
    r = compute_record(TruthTable.from_hex("tt:4:1BD8"))
    d = json.loads(json.dumps(r.to_json()))
    jsonschema.validate(d, schema("scan_record"))
    assert ScanRecord.from_json(d) == r
    # four coefficients of magnitude 8/16, from the oracle transform
    assert (r.min_coeff, r.l1, r.sparsity) == (Fraction(1, 2), Fraction(2), 4)


def test_witnesses_reproduce():
    board = scan(3).leaderboard
    for entry in board.entries.values():
        w = entry.witness
        f = TruthTable(w.n, w.table)
        rep = measures.measure_report(f)
        for k in ("s", "bs", "C", "D", "deg", "degf2", "dpar"):
            assert rep.entries[k].value == getattr(w, k)
        assert compute_record(f) == w


def test_log_ratio_ordering():
    assert LogRatio(16, 2) == LogRatio(4, 1)
    assert LogRatio(8, 2) < LogRatio(4, 1)
    assert LogRatio(2, 1) > LogRatio(2, 2)


def test_leaderboard_merge_is_order_free():
    recs = [compute_record(TruthTable(3, v)) for v in range(0, 256, 5)]
    a, b, whole = GapLeaderboard(), GapLeaderboard(), GapLeaderboard()
    for r in recs[:20]:
        a.update(r)
    for r in recs[20:]:
        b.update(r)
    for r in recs:
        whole.update(r)
    assert a.merge(b).to_json() == b.merge(a).to_json() == whole.to_json()


def test_sink_format_and_report(tmp_sink):
    scan(2, sink=tmp_sink)
    lines = open(tmp_sink).read().splitlines()
    assert json.loads(lines[0]) == {"scan": {"n": 2, "npn": False}}
    assert json.loads(lines[-1]) == {"checkpoint": 16}
    header, records = read_records(tmp_sink)
    assert header == {"n": 2, "npn": False} and len(records) == 16
    csv_text = records_csv(records)
    assert len(csv_text.strip().splitlines()) == 1 + len(records)
    rep = build_report(records)
    assert rep["records"] == 16
    md = report_markdown(rep)
    assert md.startswith("# Scan report") and "bs/s" in md


def _cut(path, nbytes):
    with open(path, "rb") as fh:
        data = fh.read()
    with open(path, "wb") as fh:
        fh.write(data[:nbytes])
    return data


@pytest.mark.parametrize("cut", [5, 40, 0.5, -7])
def test_resume_is_byte_identical(tmp_sink, monkeypatch, cut):
    monkeypatch.setattr(explorer, "CHECKPOINT_EVERY", 16)
    scan(3, sink=tmp_sink)
    size = len(open(tmp_sink, "rb").read())
    where = int(size * cut) if isinstance(cut, float) else (cut if cut > 0 else size + cut)
    full = _cut(tmp_sink, where)
    summary = scan(3, sink=tmp_sink, resume=True)
    assert open(tmp_sink, "rb").read() == full
    assert summary.records == 256
    assert summary.leaderboard.to_json() == scan(3).leaderboard.to_json()


def test_resume_rejects_a_different_scan(tmp_sink):
    scan(2, sink=tmp_sink)
    with pytest.raises(DomainError):
        scan(3, sink=tmp_sink, resume=True)


def test_threads_preserve_order(tmp_sink, monkeypatch, tmp_path):
    monkeypatch.setattr(explorer, "CHECKPOINT_EVERY", 32)
    scan(3, sink=tmp_sink)
    other = str(tmp_path / "threaded.jsonl")
    scan(3, sink=other, threads=2)
    assert open(other, "rb").read() == open(tmp_sink, "rb").read()
