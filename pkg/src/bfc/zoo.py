"""Generators for the named function families, each with its known measure profile."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .config import Limits, default_limits
from .core import PointFunction, TruthTable, compose
from .errors import DomainError, InvariantViolation, LimitExceeded


def _dense_or_point(n: int, fn: Callable[[int], int], name: str, limits: Limits | None,
                    vectorized: Callable[[np.ndarray], np.ndarray] | None = None):
    limits = limits or default_limits()
    if n > limits.dense:
        return PointFunction(n, fn, name)
    if vectorized is not None:
        return TruthTable.from_values(vectorized(np.arange(1 << n, dtype=np.int64)).astype(np.uint8))
    return TruthTable.from_callable(n, fn, limits.dense)


def _groups(word, k: int):
    mask = (1 << k) - 1
    return [(word >> (i * k)) & mask for i in range(k)]


# -- primitives -------------------------------------------------------------

def parity(n: int) -> TruthTable:
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(idx)
    for i in range(n):
        out ^= (idx >> i) & 1
    return TruthTable.from_values(out)


def and_(n: int) -> TruthTable:
    return TruthTable(n, 1 << ((1 << n) - 1))


def or_(n: int) -> TruthTable:
    return TruthTable(n, ((1 << (1 << n)) - 1) & ~1)


def constant(n: int, value: int = 0) -> TruthTable:
    return TruthTable.constant(n, value)


def dictator(n: int, i: int = 1) -> TruthTable:
    idx = np.arange(1 << n, dtype=np.int64)
    return TruthTable.from_values((idx >> (i - 1)) & 1)


# -- Rubinstein -------------------------------------------------------------

def _two_ones_patterns(k: int) -> set[int]:
    return {0b11 << j for j in range(k - 1)}


def rubinstein(k: int, limits: Limits | None = None):
    """k groups of k variables; 1 iff some group reads exactly 0^a 1 1 0^b."""
    if k < 2:
        raise DomainError("rubinstein needs k >= 2")
    pats = _two_ones_patterns(k)
    n = k * k

    def point(w):
        return int(any(g in pats for g in _groups(w, k)))

    def vec(idx):
        lut = np.zeros(1 << k, dtype=bool)
        lut[list(pats)] = True
        out = np.zeros(idx.shape, dtype=bool)
        for i in range(k):
            out |= lut[(idx >> (i * k)) & ((1 << k) - 1)]
        return out

    return _dense_or_point(n, point, f"rubinstein(k={k})", limits, vec)


# -- AND of ORs -------------------------------------------------------------

def and_of_ors(k: int, limits: Limits | None = None, blocks: int | None = None):
    """AND over ``blocks`` groups (default k) of the OR of k variables each."""
    if k < 1:
        raise DomainError("and_of_ors needs k >= 1")
    m = k if blocks is None else blocks
    n = m * k
    mask = (1 << k) - 1

    def point(w):
        return int(all((w >> (i * k)) & mask for i in range(m)))

    def vec(idx):
        out = np.ones(idx.shape, dtype=bool)
        for i in range(m):
            out &= ((idx >> (i * k)) & mask) != 0
        return out

    return _dense_or_point(n, point, f"and_of_ors(k={k})", limits, vec)


def and_of_ors_pow2(k: int, limits: Limits | None = None):
    """AND of 2^k ORs of 2^k variables each, on 2^(2k) variables."""
    return and_of_ors(1 << k, limits)


# -- Kushilevitz ------------------------------------------------------------

KUSHILEVITZ_TRIPLES = (
    (1, 3, 4), (1, 2, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5),
    (1, 2, 6), (1, 3, 6), (2, 4, 6), (3, 5, 6), (4, 5, 6),
)


def kushilevitz_polynomial(z) -> int:
    """sum z_i - sum_{i<j} z_i z_j + the ten cubic monomials, z 1-indexed via z[i-1]."""
    linear = sum(z)
    quadratic = sum(z[i] * z[j] for i, j in combinations(range(6), 2))
    cubic = sum(z[a - 1] * z[b - 1] * z[c - 1] for a, b, c in KUSHILEVITZ_TRIPLES)
    return linear - quadratic + cubic


def kushilevitz_h() -> TruthTable:
    values = []
    for w in range(64):
        z = [(w >> i) & 1 for i in range(6)]
        v = kushilevitz_polynomial(z)
        if v not in (0, 1):
            raise InvariantViolation(f"Kushilevitz polynomial takes value {v} at {z}")
        values.append(v)
    return TruthTable.from_values(values)


def kushilevitz(levels: int = 1, limits: Limits | None = None) -> TruthTable:
    limits = limits or default_limits()
    if levels < 1:
        raise DomainError("kushilevitz needs levels >= 1")
    if 6 ** levels > limits.dense:
        raise LimitExceeded(
            f"kushilevitz with {levels} levels has 6^{levels} = {6 ** levels} variables, "
            f"above the dense limit {limits.dense}"
        )
    h = kushilevitz_h()
    f = h
    for _ in range(levels - 1):
        f = compose(f, h, limits.dense)
    return f


# -- Chakraborty ------------------------------------------------------------

def chakraborty_pattern(k: int) -> list[int | None]:
    """Positional pattern 1 1 0^(k-2) (1^5 *^(k-5))^(k-2) 1^5 *^(k-8) 1^3; None is free."""
    if k < 8:
        raise DomainError("chakraborty needs k >= 8")
    pat: list[int | None] = [1, 1] + [0] * (k - 2)
    for _ in range(k - 2):
        pat += [1] * 5 + [None] * (k - 5)
    pat += [1] * 5 + [None] * (k - 8) + [1] * 3
    if len(pat) != k * k:
        raise InvariantViolation(f"pattern length {len(pat)} != k^2 = {k * k}")
    return pat


@dataclass(frozen=True)
class _Window:
    care: int
    value: int
    length: int


def _window(k: int) -> _Window:
    pat = chakraborty_pattern(k)
    care = value = 0
    for pos, v in enumerate(pat):
        if v is not None:
            care |= 1 << pos
            if v:
                value |= 1 << pos
    return _Window(care, value, len(pat))


def chakraborty_witness(k: int, n: int, rotation: int = 0) -> int:
    """Input word whose window at ``rotation`` is the pattern with free positions 0."""
    win = _window(k)
    w = win.value
    return ((w << rotation) | (w >> (n - rotation))) & ((1 << n) - 1) if rotation else w


def chakraborty(k: int, n: int) -> PointFunction:
    """1 iff some cyclic window x_i .. x_{i+k^2-1} (indices mod n) matches the pattern."""
    if k < 8:
        raise DomainError("chakraborty needs k >= 8")
    if n < k * k:
        raise DomainError(f"chakraborty needs n >= k^2 = {k * k}")
    win = _window(k)
    care, value = win.care, win.value

    def point(w):
        doubled = w | (w << n)
        for i in range(n):
            if (doubled >> i) & care == value:
                return 1
        return 0

    return PointFunction(n, point, f"chakraborty(k={k},n={n})")


# -- registry ---------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    measure: str
    expected: Callable[[dict], int]
    kind: str  # "exact" or "asymptotic"
    note: str
    applies: Callable[[dict], bool] = lambda p: True


@dataclass(frozen=True)
class ZooEntry:
    name: str
    params: dict  # name -> default (None = required)
    arity: Callable[[dict], int]
    generator: Callable[..., object]
    claims: tuple = field(default=())
    description: str = ""

    def resolve(self, given: dict) -> dict:
        unknown = set(given) - set(self.params)
        if unknown:
            raise DomainError(f"{self.name}: unknown parameter(s) {', '.join(sorted(unknown))}")
        out = {}
        for key, default in self.params.items():
            if key in given:
                out[key] = int(given[key])
            elif default is None:
                raise DomainError(f"{self.name}: missing parameter {key}")
            else:
                out[key] = default
        return out

    def make(self, params: dict | None = None, limits: Limits | None = None):
        p = self.resolve(params or {})
        return self.generator(p, limits)


def _exact(measure, fn, note, applies=lambda p: True):
    return Claim(measure, fn, "exact", note, applies)


def _asym(measure, note):
    return Claim(measure, lambda p: None, "asymptotic", note)


# Rubinstein at k = 3: frozen from bfc.oracles (definition-level brute force)
RUBINSTEIN_K3 = {"s": 6, "bs": 6, "C": 6, "D": 9, "deg": 9, "degf2": 6}

ZOO: dict[str, ZooEntry] = {}


def _register(entry: ZooEntry):
    ZOO[entry.name] = entry


_register(ZooEntry(
    "parity", {"n": None}, lambda p: p["n"], lambda p, lim: parity(p["n"]),
    claims=(
        _exact("s", lambda p: p["n"], "every coordinate is always sensitive"),
        _exact("bs", lambda p: p["n"], "bs = s"),
        _exact("C", lambda p: p["n"], "all coordinates needed"),
        _exact("D", lambda p: p["n"], "ordinary trees must read everything"),
        _exact("deg", lambda p: p["n"], "single top Fourier coefficient"),
        _exact("degf2", lambda p: 1 if p["n"] else 0, "x_1 + ... + x_n"),
        _exact("dpar", lambda p: 1 if p["n"] else 0, "one parity query"),
    ),
    description="x_1 xor ... xor x_n",
))
_register(ZooEntry("and", {"n": None}, lambda p: p["n"], lambda p, lim: and_(p["n"]),
                   claims=(_exact("s", lambda p: p["n"], "all-ones input is fully sensitive"),),
                   description="x_1 and ... and x_n"))
_register(ZooEntry("or", {"n": None}, lambda p: p["n"], lambda p, lim: or_(p["n"]),
                   claims=(_exact("degf2", lambda p: p["n"], "OR has full mod-2 degree"),),
                   description="x_1 or ... or x_n"))
_register(ZooEntry(
    "and_of_ors", {"k": None}, lambda p: p["k"] ** 2, lambda p, lim: and_of_ors(p["k"], lim),
    claims=(
        _exact("s", lambda p: p["k"], "sensitivity k"),
        _exact("bs", lambda p: p["k"], "block sensitivity k"),
        _exact("C", lambda p: p["k"], "certificate complexity k"),
        _exact("deg", lambda p: p["k"] ** 2, "full degree"),
        _exact("D", lambda p: p["k"] ** 2, "decision-tree depth k^2"),
    ),
    description="AND of k ORs of k variables",
))
_register(ZooEntry(
    "and_of_ors_pow2", {"k": 1}, lambda p: 4 ** p["k"], lambda p, lim: and_of_ors_pow2(p["k"], lim),
    claims=(
        _exact("s", lambda p: 2 ** p["k"], "sensitivity sqrt(n)"),
        _exact("degf2", lambda p: 4 ** p["k"], "full mod-2 degree"),
        _exact("dpar", lambda p: 4 ** p["k"], "parity trees gain nothing: D_parity = n"),
    ),
    description="AND of 2^k ORs of 2^k variables (n = 4^k)",
))
_register(ZooEntry(
    "rubinstein", {"k": None}, lambda p: p["k"] ** 2, lambda p, lim: rubinstein(p["k"], lim),
    claims=tuple(
        _exact(m, (lambda v: lambda p: v)(v), "exhaustive brute-force value at k=3",
               applies=lambda p: p["k"] == 3)
        for m, v in RUBINSTEIN_K3.items()
    ) + (
        _asym("s", "Theta(k) = Theta(sqrt n)"),
        _asym("bs", "Theta(k^2) = Theta(n)"),
    ),
    description="k groups of k; 1 iff some group is exactly two adjacent ones",
))
_register(ZooEntry(
    "kushilevitz_h", {}, lambda p: 6, lambda p, lim: kushilevitz_h(),
    claims=(
        _exact("deg", lambda p: 3, "degree 3"),
        _exact("s", lambda p: 6, "full sensitivity at the all-zero input"),
        _exact("bs", lambda p: 6, "full block sensitivity"),
        _exact("C", lambda p: 6, "full certificate complexity"),
        _exact("D", lambda p: 6, "full decision-tree depth"),
    ),
    description="the six-variable degree-3 polynomial",
))
_register(ZooEntry(
    "kushilevitz", {"levels": 1}, lambda p: 6 ** p["levels"],
    lambda p, lim: kushilevitz(p["levels"], lim),
    claims=(
        _exact("deg", lambda p: 3 ** p["levels"], "degree 3^levels"),
        _exact("s", lambda p: 6 ** p["levels"], "full sensitivity"),
        _exact("bs", lambda p: 6 ** p["levels"], "full block sensitivity"),
        _exact("C", lambda p: 6 ** p["levels"], "full certificate complexity"),
        _exact("D", lambda p: 6 ** p["levels"], "full decision-tree depth"),
        _asym("D", "D = deg^(log_3 6)"),
    ),
    description="h composed with itself levels times",
))
_register(ZooEntry(
    "chakraborty", {"k": 8, "n": None}, lambda p: p["n"], lambda p, lim: chakraborty(p["k"], p["n"]),
    claims=(
        _asym("s", "Theta(n^(1/3)) at n = k^3"),
        _asym("bs", "Theta(n^(2/3)) at n = k^3"),
    ),
    description="cyclically invariant pattern detector on n >= k^2 variables",
))


def get(name: str) -> ZooEntry:
    try:
        return ZOO[name]
    except KeyError:
        raise DomainError(f"unknown zoo function {name!r}; known: {', '.join(sorted(ZOO))}") from None


def make(name: str, limits: Limits | None = None, **params):
    return get(name).make(params, limits)


@dataclass
class ClaimResult:
    measure: str
    expected: int | None
    actual: object
    kind: str
    note: str
    passed: bool | None


def verify(name: str, params: dict | None = None, limits: Limits | None = None) -> list[ClaimResult]:
    """Run every applicable exact claim through the measures module."""
    from .measures import Exact, measure_report

    entry = get(name)
    p = entry.resolve(params or {})
    f = entry.generator(p, limits)
    exact = [c for c in entry.claims if c.kind == "exact" and c.applies(p)]
    report = measure_report(f, tuple(dict.fromkeys(c.measure for c in exact)), limits)
    out = []
    for c in exact:
        got = report.entries[c.measure]
        want = c.expected(p)
        passed = isinstance(got, Exact) and got.value == want
        out.append(ClaimResult(c.measure, want, got, c.kind, c.note, passed))
    for c in entry.claims:
        if c.kind == "asymptotic":
            out.append(ClaimResult(c.measure, None, None, c.kind, c.note, None))
    return out
