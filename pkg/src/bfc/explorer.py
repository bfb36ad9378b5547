"""Exhaustive scans over all small functions with a hard-failing relation suite.

Records stream to a JSON-lines sink: a header line, one line per function in
enumeration order, and ``{"checkpoint": cursor}`` every 4096 records, where
the cursor is the next table value to enumerate.  A final checkpoint equal to
2^(2^n) marks a finished scan.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering

import numpy as np

from . import measures, oracles
from .config import Limits, default_limits
from .core import TruthTable
from .errors import DomainError, LimitExceeded, RelationViolation
from .spectral import comm_rank, fourier_transform

CHECKPOINT_EVERY = 1 << 12
KK_GUARD = 1e-9
MEASURE_FIELDS = ("s", "bs", "C", "D", "deg", "degf2", "dpar", "sparsity")


def dyadic_json(q: Fraction) -> dict:
    den = q.denominator
    if den & (den - 1):
        raise ValueError(f"{q} is not dyadic")
    return {"num": q.numerator, "log2den": den.bit_length() - 1}


def dyadic_from_json(d: dict) -> Fraction:
    return Fraction(d["num"], 1 << d["log2den"])


@dataclass(frozen=True)
class ScanRecord:
    n: int
    table: int
    s: int
    bs: int
    C: int
    D: int
    deg: int
    degf2: int
    dpar: int
    sparsity: int
    min_coeff: Fraction
    l1: Fraction
    granularity: int
    gl_vertices: int
    depends_on_all: bool
    full_degree: bool

    @property
    def spec(self) -> str:
        return TruthTable(self.n, self.table).to_hex()

    def to_json(self) -> dict:
        d = asdict(self)
        d["min_coeff"] = dyadic_json(self.min_coeff)
        d["l1"] = dyadic_json(self.l1)
        d["flags"] = {"depends_on_all": d.pop("depends_on_all"), "full_degree": d.pop("full_degree")}
        return d

    @classmethod
    def from_json(cls, d: dict) -> "ScanRecord":
        d = dict(d)
        flags = d.pop("flags")
        d["min_coeff"] = dyadic_from_json(d["min_coeff"])
        d["l1"] = dyadic_from_json(d["l1"])
        return cls(**d, **flags)

    def measures(self) -> dict:
        return {k: getattr(self, k) for k in MEASURE_FIELDS}


def compute_record(f: TruthTable, limits: Limits | None = None) -> ScanRecord:
    limits = limits or default_limits()
    spec = fourier_transform(f)
    nz = [abs(a) for a in spec.numerators if a]
    size = 1 << f.n
    deg = spec.degree()
    return ScanRecord(
        n=f.n,
        table=f.bits,
        s=measures.sensitivity(f),
        bs=measures.block_sensitivity(f, limits),
        C=measures.certificate_complexity(f, limits),
        D=measures.decision_tree_depth(f, limits),
        deg=deg,
        degf2=measures.degree_mod2(f),
        dpar=measures.parity_tree_depth(f, limits),
        sparsity=len(nz),
        min_coeff=Fraction(min(nz), size),
        l1=Fraction(sum(nz), size),
        granularity=_granularity(spec.numerators, f.n),
        gl_vertices=int(np.count_nonzero(f.values == _parity(f.n))),
        depends_on_all=measures.depends_on_all(f),
        full_degree=deg == f.n,
    )


@lru_cache(maxsize=None)
def _parity(n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    p = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        p ^= ((idx >> i) & 1).astype(np.uint8)
    return p


def _granularity(numerators, n: int) -> int:
    """Least e with every coefficient in 2^-e Z."""
    twos = min(((a & -a).bit_length() - 1 for a in numerators if a), default=n)
    return max(0, n - twos)


# -- relation suite ---------------------------------------------------------

def kenyon_kutin_bound(s: int) -> float:
    return 2 / math.sqrt(2 * math.pi) * math.exp(s) * math.sqrt(s)


def simon_holds(s: int, n: int) -> bool:
    """s >= (1/2)log n - (1/2)log log n + 1/2, rearranged to 2^(2s-1) log n >= n."""
    return 2.0 ** (2 * s - 1) * math.log2(n) >= n - KK_GUARD


def relation_failures(r: ScanRecord) -> list[str]:
    n = r.n
    checks = [
        ("s <= bs <= C <= D <= n", r.s <= r.bs <= r.C <= r.D <= n),
        ("C <= s*bs (C = 0 when s = 0)", r.C <= r.s * r.bs if r.s >= 1 else r.C == 0),
        ("D <= C*bs", r.D <= r.C * r.bs),
        ("bs <= 2 deg^2", r.bs <= 2 * r.deg * r.deg),
        ("deg <= D", r.deg <= r.D),
        ("degf2 <= deg", r.degf2 <= r.deg),
        ("degf2 <= dpar", r.degf2 <= r.dpar),
        ("dpar <= D", r.dpar <= r.D),
        ("log2 sparsity <= 2 dpar", r.sparsity <= 4 ** r.dpar),
        ("bs <= (2/sqrt(2 pi)) e^s sqrt(s)", r.bs <= kenyon_kutin_bound(r.s) + KK_GUARD),
        ("coefficients in 2^-D Z", r.granularity <= r.D),
        ("min|f^| * L1 <= 1", r.min_coeff * r.l1 <= 1),
        ("full degree <=> unbalanced subgraph",
         r.full_degree == (n == 0 or r.gl_vertices != 1 << (n - 1))),
    ]
    if r.depends_on_all and n >= 2:
        checks.append(("Simon: s >= (log n - log log n + 1)/2", simon_holds(r.s, n)))
    return [name for name, ok in checks if not ok]


def check_relations(r: ScanRecord) -> None:
    bad = relation_failures(r)
    if bad:
        raise RelationViolation(f"{r.spec}: violates {'; '.join(bad)}", r)


def check_oracles(r: ScanRecord) -> None:
    f = TruthTable(r.n, r.table)
    bs, c = oracles.block_sensitivity(f), oracles.certificate_complexity(f)
    if (bs, c) != (r.bs, r.C):
        raise RelationViolation(
            f"{r.spec}: fast bs={r.bs}, C={r.C} but oracle bs={bs}, C={c}", r)


# -- NPN classes ------------------------------------------------------------

@lru_cache(maxsize=None)
def _npn_maps(n: int) -> np.ndarray:
    """Source index for every (input permutation, input negation) pair."""
    idx = np.arange(1 << n)
    bits = [(idx >> i) & 1 for i in range(n)]
    maps = []
    for perm in itertools.permutations(range(n)):
        permuted = np.zeros(1 << n, dtype=np.int64)
        for i, src in enumerate(perm):
            permuted |= bits[src] << i
        for neg in range(1 << n):
            maps.append(permuted ^ neg)
    return np.array(maps, dtype=np.int64)


def npn_canonical_word(n: int, bits: int) -> int:
    if n > 5:
        raise LimitExceeded(f"NPN canonical form implemented for n <= 5, got {n}")
    f = TruthTable(n, bits)
    variants = f.values[_npn_maps(n)].astype(np.uint64)
    weights = np.left_shift(np.uint64(1), np.arange(1 << n, dtype=np.uint64))
    words = (variants * weights).sum(axis=1, dtype=np.uint64)
    full = np.uint64((1 << (1 << n)) - 1)
    return min(int(words.min()), int((full ^ words).min()))


def npn_canonical(f: TruthTable) -> TruthTable:
    """Least table (as an integer) over permutations, input and output negations."""
    return TruthTable(f.n, npn_canonical_word(f.n, f.bits))


# -- leaderboard ------------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class LogRatio:
    """log2(base) / over, compared exactly by cross powers."""

    base: int
    over: int

    def __lt__(self, other):
        return self.base ** other.over < other.base ** self.over

    def __eq__(self, other):
        return isinstance(other, LogRatio) and self.base ** other.over == other.base ** self.over

    __hash__ = None

    def to_json(self):
        return {"log2_of": self.base, "over": self.over}


def _frac_json(q: Fraction):
    return {"num": q.numerator, "den": q.denominator}


RATIOS = {
    "bs/s": lambda r: Fraction(r.bs, r.s) if r.s else None,
    "bs/s^2": lambda r: Fraction(r.bs, r.s ** 2) if r.s else None,
    "deg/s^2": lambda r: Fraction(r.deg, r.s ** 2) if r.s else None,
    "C/bs": lambda r: Fraction(r.C, r.bs) if r.bs else None,
    "D/deg": lambda r: Fraction(r.D, r.deg) if r.deg else None,
    "dpar/s^2": lambda r: Fraction(r.dpar, r.s ** 2) if r.s else None,
    "log2(sparsity)/s": lambda r: LogRatio(r.sparsity, r.s) if r.s else None,
}


@dataclass
class LeaderEntry:
    value: object
    witness: ScanRecord

    def better_than(self, other: "LeaderEntry | None") -> bool:
        if other is None:
            return True
        if self.value != other.value:
            return self.value > other.value
        return self.witness.table < other.witness.table

    def to_json(self):
        v = self.value
        return {
            "value": v.to_json() if isinstance(v, LogRatio) else _frac_json(v),
            "witness": self.witness.spec,
            "measures": self.witness.measures(),
        }


@dataclass
class GapLeaderboard:
    entries: dict = field(default_factory=dict)

    def update(self, r: ScanRecord) -> None:
        for name, fn in RATIOS.items():
            v = fn(r)
            if v is None:
                continue
            cand = LeaderEntry(v, r)
            if cand.better_than(self.entries.get(name)):
                self.entries[name] = cand

    def merge(self, other: "GapLeaderboard") -> "GapLeaderboard":
        out = GapLeaderboard(dict(self.entries))
        for name, e in other.entries.items():
            if e.better_than(out.entries.get(name)):
                out.entries[name] = e
        return out

    def to_json(self):
        return {name: self.entries[name].to_json() for name in RATIOS if name in self.entries}


# -- scanning ---------------------------------------------------------------

@dataclass
class ScanSummary:
    n: int
    npn: bool
    records: int
    violations: int
    leaderboard: GapLeaderboard

    def to_json(self):
        return {
            "n": self.n,
            "npn": self.npn,
            "records": self.records,
            "violations": self.violations,
            "leaderboard": self.leaderboard.to_json(),
        }


def _scan_range(args):
    n, lo, hi, npn, oracle, limits = args
    out = []
    for v in range(lo, hi):
        if npn and npn_canonical_word(n, v) != v:
            continue
        r = compute_record(TruthTable(n, v), limits)
        check_relations(r)
        if oracle:
            check_oracles(r)
        out.append(r)
    return out


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _resume_point(path: str, header: dict) -> tuple[int, list[ScanRecord]]:
    """Truncate ``path`` after its last checkpoint; return (cursor, kept records)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    keep = 0
    cursor = 0
    records: list[ScanRecord] = []
    pending: list[ScanRecord] = []
    pos = 0
    first = True
    for line in raw.split(b"\n")[:-1]:  # the last piece lacks a newline
        end = pos + len(line) + 1
        try:
            obj = json.loads(line)
        except ValueError:
            break
        if first:
            if obj != {"scan": header}:
                raise DomainError(f"{path} holds a different scan: {obj}")
            keep, first = end, False
        elif "checkpoint" in obj:
            cursor = obj["checkpoint"]
            records.extend(pending)
            pending = []
            keep = end
        else:
            pending.append(ScanRecord.from_json(obj))
        pos = end
    with open(path, "r+b") as fh:
        fh.truncate(keep)
    if first:
        return -1, []
    return cursor, records


def scan(n: int, npn: bool = False, sink: str | None = None, resume: bool = False,
         threads: int = 1, limits: Limits | None = None, oracle: bool | None = None,
         allow_n5: bool = False) -> ScanSummary:
    """Enumerate every table on n variables (or NPN representatives) and check relations."""
    limits = limits or default_limits()
    if n < 0:
        raise DomainError("n must be non-negative")
    if n >= 6:
        raise LimitExceeded(f"scans stop at n = 5 (2^{1 << n} functions at n = {n})")
    if n == 5 and not (npn and allow_n5):
        raise LimitExceeded(
            "n = 5 needs NPN dedup and an explicit opt-in: 2^32 tables to canonicalise, "
            "roughly 2^32 * 50us ~ 60 hours single-threaded")
    oracle = n <= 3 if oracle is None else oracle
    total = 1 << (1 << n)
    header = {"n": n, "npn": npn}
    board = GapLeaderboard()
    count = 0
    start = 0
    fh = None
    if sink is not None:
        if resume and os.path.exists(sink) and os.path.getsize(sink):
            cursor, kept = _resume_point(sink, header)
            if cursor >= 0:
                start = cursor
                for r in kept:
                    board.update(r)
                count = len(kept)
        if start == 0:
            fh = open(sink, "w")
            fh.write(_dump({"scan": header}) + "\n")
            board, count = GapLeaderboard(), 0
        else:
            fh = open(sink, "a")

    chunk = CHECKPOINT_EVERY if not npn else CHECKPOINT_EVERY * 8
    ranges = [(n, lo, min(lo + chunk, total), npn, oracle, limits) for lo in range(start, total, chunk)]
    since = 0

    def consume(records, hi):
        nonlocal count, since
        for r in records:
            board.update(r)
            count += 1
            if fh is not None:
                fh.write(_dump(r.to_json()) + "\n")
            since += 1
        # checkpoints sit on range boundaries so a resume never splits a range
        if fh is not None and (since >= CHECKPOINT_EVERY or hi == total):
            fh.write(_dump({"checkpoint": hi}) + "\n")
            fh.flush()
            since = 0

    try:
        if threads > 1 and len(ranges) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for args, records in zip(ranges, pool.map(_scan_range, ranges)):
                    consume(records, args[2])
        else:
            for args in ranges:
                consume(_scan_range(args), args[2])
    finally:
        if fh is not None:
            fh.close()
    return ScanSummary(n, npn, count, 0, board)


def read_records(path: str) -> tuple[dict | None, list[ScanRecord]]:
    header = None
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "scan" in obj:
                header = obj["scan"]
            elif "checkpoint" not in obj:
                out.append(ScanRecord.from_json(obj))
    return header, out


# -- reports ----------------------------------------------------------------

def _rank_observations(board: GapLeaderboard, limits: Limits | None) -> list[dict]:
    seen = {}
    for e in board.entries.values():
        r = e.witness
        if r.table in seen:
            continue
        f = TruthTable(r.n, r.table)
        seen[r.table] = {
            "witness": r.spec,
            "deg": r.deg,
            "rank_and": comm_rank(f, "and", limits=limits),
            "rank_or": comm_rank(f, "or", limits=limits),
            "rank_xor_pm": r.sparsity,
        }
    return [seen[k] for k in sorted(seen)]


def _by_sensitivity(records: list[ScanRecord]) -> list[dict]:
    groups: dict[int, list[ScanRecord]] = {}
    for r in records:
        groups.setdefault(r.s, []).append(r)
    out = []
    for s in sorted(groups):
        rs = groups[s]
        out.append({
            "s": s,
            "count": len(rs),
            "max_bs": max(r.bs for r in rs),
            "max_deg": max(r.deg for r in rs),
            "max_D": max(r.D for r in rs),
            "min_fourier": dyadic_json(min(r.min_coeff for r in rs)),
            "max_l1": dyadic_json(max(r.l1 for r in rs)),
        })
    return out


def build_report(records: list[ScanRecord], limits: Limits | None = None) -> dict:
    board = GapLeaderboard()
    for r in records:
        board.update(r)
    return {
        "records": len(records),
        "n": sorted({r.n for r in records}),
        "leaderboard": board.to_json(),
        "observations": {
            "by_sensitivity": _by_sensitivity(records),
            "rank_vs_degree": _rank_observations(board, limits),
        },
    }


CSV_COLUMNS = ("n", "table", "hex") + MEASURE_FIELDS + (
    "min_coeff_num", "min_coeff_log2den", "l1_num", "l1_log2den", "granularity",
    "gl_vertices", "depends_on_all", "full_degree")


def records_csv(records: list[ScanRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        mc, l1 = dyadic_json(r.min_coeff), dyadic_json(r.l1)
        w.writerow([r.n, r.table, r.spec] + [getattr(r, k) for k in MEASURE_FIELDS] + [
            mc["num"], mc["log2den"], l1["num"], l1["log2den"], r.granularity,
            r.gl_vertices, int(r.depends_on_all), int(r.full_degree)])
    return buf.getvalue()


def _ratio_text(v: dict) -> str:
    if "log2_of" in v:
        return f"log2({v['log2_of']})/{v['over']}"
    return f"{v['num']}/{v['den']}" if v["den"] != 1 else str(v["num"])


def report_markdown(rep: dict) -> str:
    lines = [f"# Scan report ({rep['records']} records, n in {rep['n']})", "",
             "## Gap leaderboard", "", "| ratio | max | witness | s | bs | C | D | deg |",
             "|---|---|---|---|---|---|---|---|"]
    for name, e in rep["leaderboard"].items():
        m = e["measures"]
        lines.append(f"| {name} | {_ratio_text(e['value'])} | `{e['witness']}` | {m['s']} | {m['bs']} "
                     f"| {m['C']} | {m['D']} | {m['deg']} |")
    lines += ["", "## Observations by sensitivity", "",
              "| s | functions | max bs | max deg | max D | min abs coeff | max L1 |", "|---|---|---|---|---|---|---|"]
    for row in rep["observations"]["by_sensitivity"]:
        mf, l1 = row["min_fourier"], row["max_l1"]
        lines.append(f"| {row['s']} | {row['count']} | {row['max_bs']} | {row['max_deg']} | {row['max_D']} "
                     f"| {mf['num']}/2^{mf['log2den']} | {l1['num']}/2^{l1['log2den']} |")
    lines += ["", "## Communication-matrix ranks of leaderboard witnesses", "",
              "| witness | deg | rank f(x and y) | rank f(x or y) | rank f(x xor y) |", "|---|---|---|---|---|"]
    for row in rep["observations"]["rank_vs_degree"]:
        lines.append(f"| `{row['witness']}` | {row['deg']} | {row['rank_and']} | {row['rank_or']} "
                     f"| {row['rank_xor_pm']} |")
    return "\n".join(lines) + "\n"
