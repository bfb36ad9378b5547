"""End-to-end acceptance checks, one test (or group) per criterion.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import json
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from bfc import explorer, oracles, zoo
from bfc.analytic import (antipodal_derivatives, derivative_weights, random_interior_lines, t_grid,
                          vertex_sweep)
from bfc.cli import run
from bfc.core import BitVector, PointFunction, TruthTable
from bfc.glgraph import balanced, function_to_subgraph, gamma, own_side_degrees
from bfc.lattice import build_coloring, coloring_sensitivity_exact, nontrivial
from bfc.measures import block_sensitivity_at, degree, maximum_packings, sensitivity_at
from bfc.spectral import PLUS_MINUS, comm_rank, fourier_transform, xor_rank_via_spectrum

criterion = pytest.mark.criterion


def all_values(n):
    """Every truth table on n variables as rows of a (2^2^n, 2^n) 0/1 matrix."""
    v = np.arange(1 << (1 << n), dtype=np.int64)[:, None]
    return ((v >> np.arange(1 << n)) & 1).astype(np.int64)


def sensitivity_profiles(n):
    """s(f, x) for every f and x, straight from the definition."""
    V = all_values(n)
    idx = np.arange(1 << n)
    out = np.zeros(V.shape, dtype=np.int64)
    for i in range(n):
        out += V != V[:, idx ^ (1 << i)]
    return out


# -- 1 ------------------------------------------------------------------------

@criterion(1, "zoo regression (AND-of-ORs, Kushilevitz, parity, D_parity of AND-of-ORs)")
def test_zoo_regression():
    start = time.perf_counter()
    for z in range(64):
        assert zoo.kushilevitz_polynomial([(z >> i) & 1 for i in range(6)]) in (0, 1)
    expected = {
        ("and_of_ors", (("k", 3),)): {"s": 3, "bs": 3, "C": 3, "deg": 9, "D": 9},
        ("kushilevitz", (("levels", 1),)): {"deg": 3, "s": 6, "bs": 6, "C": 6, "D": 6},
        ("and_of_ors_pow2", (("k", 1),)): {"dpar": 4},
    }
    for n in range(1, 9):
        expected[("parity", (("n", n),))] = {"s": n, "bs": n, "C": n, "D": n, "deg": n, "degf2": 1, "dpar": 1}
    for (name, params), want in expected.items():
        results = zoo.verify(name, dict(params))
        got = {r.measure: r.actual.value for r in results if r.kind == "exact"}
        assert all(r.passed for r in results if r.kind == "exact"), (name, params)
        assert {k: got[k] for k in want} == want, (name, params)
    assert time.perf_counter() - start < 10


# -- 2 ------------------------------------------------------------------------

@criterion(2, "exhaustive relation suite at n = 4, oracle cross-check at n <= 3")
def test_relation_suite_small_n_with_oracles():
    for n in range(4):
        summary = explorer.scan(n, oracle=True)
        assert summary.records == 1 << (1 << n)
        assert summary.violations == 0


@criterion(2, "exhaustive relation suite at n = 4, oracle cross-check at n <= 3")
def test_relation_suite_n4(tmp_path):
    start = time.perf_counter()
    summary = explorer.scan(4, sink=str(tmp_path / "n4.jsonl"), threads=1)
    elapsed = time.perf_counter() - start
    assert summary.records == 65536 and summary.violations == 0
    assert elapsed < 600
    _, records = explorer.read_records(str(tmp_path / "n4.jsonl"))
    assert len(records) == 65536
    assert all(not explorer.relation_failures(r) for r in records)


# -- 3 ------------------------------------------------------------------------

SPECTRAL_ZOO = (
    [zoo.parity(n) for n in range(1, 9)] + [zoo.and_(n) for n in range(1, 9)]
    + [zoo.or_(n) for n in range(1, 9)] + [zoo.dictator(n, n) for n in range(1, 9)]
    + [zoo.kushilevitz_h(), zoo.and_of_ors(2), zoo.and_of_ors_pow2(1), zoo.rubinstein(2)]
)


@criterion(3, "XOR-matrix rank equals Fourier sparsity; Parseval")
def test_spectral_identity_n3():
    for v in range(256):
        f = TruthTable(3, v)
        spec = fourier_transform(f)
        assert spec.parseval_sum() == 4 ** 3
        assert comm_rank(f, "xor", PLUS_MINUS) == spec.sparsity == xor_rank_via_spectrum(f, PLUS_MINUS)


@criterion(3, "XOR-matrix rank equals Fourier sparsity; Parseval")
@pytest.mark.parametrize("f", SPECTRAL_ZOO, ids=lambda f: f.to_hex()[:24])
def test_spectral_identity_zoo(f):
    spec = fourier_transform(f)
    assert spec.parseval_sum() == 4 ** f.n
    assert comm_rank(f, "xor", PLUS_MINUS) == spec.sparsity


# -- 4 ------------------------------------------------------------------------

@criterion(4, "Gotsman-Linial identities at n = 4; AND-of-ORs k=3 gives Gamma = 3")
def test_gotsman_linial_n4():
    profiles = sensitivity_profiles(4)
    for v in range(65536):
        f = TruthTable(4, v)
        g = function_to_subgraph(f)
        deg_side = own_side_degrees(g)
        assert np.array_equal(deg_side, profiles[v])
        assert gamma(g) == profiles[v].max()
        assert balanced(g) == (degree(f) < 4)


@criterion(4, "Gotsman-Linial identities at n = 4; AND-of-ORs k=3 gives Gamma = 3")
def test_gotsman_linial_and_of_ors():
    g = function_to_subgraph(zoo.and_of_ors(3))
    assert g.n == 9
    assert gamma(g) == 3 < 9 ** 0.5 + 1


# -- 5 ------------------------------------------------------------------------

@criterion(5, "Shi: antipodal derivative = s(f, a); sampled lines <= s(f); sweep attains s(f)")
def test_shi_antipodal_and_sweep():
    for n in range(5):
        profiles = sensitivity_profiles(n)
        for v in range(1 << (1 << n)):
            f = TruthTable(n, v)
            d = antipodal_derivatives(f)
            assert np.array_equal(np.abs(d), profiles[v])
            s = int(profiles[v].max())
            assert vertex_sweep(f) == s


@criterion(5, "Shi: antipodal derivative = s(f, a); sampled lines <= s(f); sweep attains s(f)")
def test_shi_sampled_lines_bounded():
    for n in range(1, 5):
        V = all_values(n)
        s = sensitivity_profiles(n).max(axis=1)
        lines = random_interior_lines(n, 40, seed=n, den=12)
        for line in lines:
            for t in t_grid(9):
                W, den = derivative_weights(n, line, t)
                assert np.all(np.abs(V @ W) <= s * den)


# -- 6 ------------------------------------------------------------------------

@criterion(6, "lattice colourings from bs witnesses are non-trivial with S(C) <= 2 s(f)")
def test_lattice_reduction():
    families = 0
    for n in range(1, 5):
        profiles = sensitivity_profiles(n)
        for v in range(1 << (1 << n)):
            f = TruthTable(n, v)
            bs_at = [block_sensitivity_at(f, x) for x in range(f.size)]
            bs = max(bs_at)
            if bs == 0:
                continue
            bound = 2 * int(profiles[v].max())
            for x in (x for x in range(f.size) if bs_at[x] == bs):
                for fam in maximum_packings(f, x):
                    c = build_coloring(f, x, fam, strict=True)
                    assert c.b == bs
                    assert nontrivial(c)
                    assert coloring_sensitivity_exact(c) <= bound
                    families += 1
    assert families > 0


# -- 7 ------------------------------------------------------------------------

@criterion(7, "desk-scale goldens: Rubinstein k=3, Kushilevitz level 1, Chakraborty witness")
def test_small_parameter_goldens():
    rub = zoo.rubinstein(3)
    assert zoo.RUBINSTEIN_K3 == {
        "s": oracles.sensitivity(rub), "bs": oracles.block_sensitivity(rub),
        "C": oracles.certificate_complexity(rub), "D": oracles.decision_tree_depth(rub),
        "deg": oracles.degree(rub), "degf2": oracles.degree_mod2(rub),
    }
    h = zoo.kushilevitz(1)
    assert oracles.decision_tree_depth(h) == 6 and oracles.degree(h) == 3


@criterion(7, "desk-scale goldens: Rubinstein k=3, Kushilevitz level 1, Chakraborty witness")
def test_chakraborty_witness_sensitivity():
    f = zoo.chakraborty(8, 512)
    calls = []
    counted = PointFunction(512, lambda w: calls.append(w) or f(w))
    x = BitVector(512, zoo.chakraborty_witness(8, 512))
    start = time.perf_counter()
    s = sensitivity_at(counted, x)
    assert time.perf_counter() - start < 1.0
    assert len(calls) == 513
    assert s == 46


# -- 8 ------------------------------------------------------------------------

DETERMINISM_RUNS = [
    ["zoo", "verify", "--name", "and_of_ors", "--k", "3"],
    ["zoo", "verify", "--name", "kushilevitz", "--levels", "1"],
    ["measures", "--fn", "zoo:rubinstein:k=3"],
    ["measures", "--fn", "zoo:chakraborty:k=8:n=512", "--at", "0x" + format(zoo.chakraborty_witness(8, 512), "x"),
     "--set", "s"],
    ["rank", "--fn", "zoo:kushilevitz_h", "--op", "xor", "--values", "pm"],
    ["spectrum", "--fn", "zoo:kushilevitz_h"],
    ["gl", "--fn", "zoo:and_of_ors:k=3"],
    ["shi", "--fn", "zoo:rubinstein:k=2", "--sweep"],
    ["lattice", "--fn", "zoo:rubinstein:k=3", "--auto-blocks"],
    ["scan", "--n", "3"],
]


def _subprocess_outputs(seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    code = ("import sys, json\nfrom bfc.cli import run\n"
            "for argv in json.loads(sys.argv[1]):\n"
            "    run(argv)\n    print('\\x00', flush=True)\n")
    out = subprocess.run([sys.executable, "-c", code, json.dumps(DETERMINISM_RUNS)], env=env,
                         capture_output=True, text=True, check=True)
    return out.stdout.split("\x00\n")[:-1]


@criterion(8, "byte-identical JSON across repeated runs")
def test_determinism(capsys):
    first, second = [], []
    for sink in (first, second):
        for argv in DETERMINISM_RUNS:
            code = run(list(argv))
            sink.append(capsys.readouterr().out)
            assert code in (0, 2), sink[-1]
    assert first == second
    assert _subprocess_outputs(1) == _subprocess_outputs(12345) == first


@criterion(8, "byte-identical JSON across repeated runs")
def test_scan_sink_determinism(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    explorer.scan(3, sink=str(a))
    explorer.scan(3, sink=str(b))
    assert a.read_bytes() == b.read_bytes()
