"""Exact complexity measures: s, bs, C, D, deg, deg over GF(2), parity-tree depth.

Each exact routine refuses arities above its limit by raising
:class:`LimitExceeded` carrying valid ``(lo, hi)`` bounds;
:func:`measure_report` turns those into :class:`Bounds` entries.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .config import Limits, default_limits
from .core import BitVector, Block, BooleanFunction, PointFunction, TruthTable, bits_of, popcount
from .errors import ArityError, DomainError, LimitExceeded
from .transforms import mobius_gf2, popcounts, walsh_hadamard

MEASURES = ("s", "bs", "C", "D", "deg", "degf2", "dpar")


@dataclass(frozen=True)
class Exact:
    value: int

    def to_json(self):
        return {"exact": self.value}


@dataclass(frozen=True)
class Bounds:
    lo: int
    hi: int
    reason: str

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty bounds [{self.lo}, {self.hi}]")

    def to_json(self):
        return {"lo": self.lo, "hi": self.hi, "reason": self.reason}


@dataclass
class MeasureReport:
    n: int
    entries: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return all(isinstance(v, Exact) for v in self.entries.values())

    def exact(self, name):
        entry = self.entries[name]
        return entry.value if isinstance(entry, Exact) else None

    def to_json(self):
        return {name: self.entries[name].to_json() for name in self.entries}


def _word(f, x) -> int:
    if isinstance(x, BitVector):
        if x.n != f.n:
            raise ArityError(f"input has arity {x.n}, function has {f.n}")
        return x.word
    if not 0 <= x < (1 << f.n):
        raise DomainError(f"input word {x} outside the cube of dimension {f.n}")
    return x


def _require_dense(f, what):
    if not isinstance(f, TruthTable):
        raise DomainError(f"{what} needs a dense truth table")


# -- sensitivity ------------------------------------------------------------

def sensitivity_at(f: BooleanFunction, x) -> int:
    """Number of sensitive coordinates at x (n + 1 evaluations)."""
    w = _word(f, x)
    v = f(w)
    return sum(1 for i in range(f.n) if f(w ^ (1 << i)) != v)


def sensitive_mask_at(f: BooleanFunction, x) -> int:
    w = _word(f, x)
    v = f(w)
    mask = 0
    for i in range(f.n):
        if f(w ^ (1 << i)) != v:
            mask |= 1 << i
    return mask


def sensitivity_profile(f: TruthTable) -> np.ndarray:
    """s(f, x) for every input word x."""
    _require_dense(f, "sensitivity profile")
    v = f.values
    idx = np.arange(f.size)
    out = np.zeros(f.size, dtype=np.int64)
    for i in range(f.n):
        out += v != v[idx ^ (1 << i)]
    return out


def sensitivity(f: TruthTable) -> int:
    if f.n == 0:
        return 0
    return int(sensitivity_profile(f).max())


def depends_on_all(f: TruthTable) -> bool:
    _require_dense(f, "dependence check")
    v = f.values
    idx = np.arange(f.size)
    return all(bool((v != v[idx ^ (1 << i)]).any()) for i in range(f.n))


# -- block sensitivity ------------------------------------------------------

def _pointwise_lower_bound(f: BooleanFunction, samples: int = 64, seed: int = 0) -> int:
    rng = random.Random(seed)
    probes = [0, (1 << f.n) - 1] + [rng.getrandbits(f.n) for _ in range(samples)]
    return max(sensitivity_at(f, w) for w in probes)


def _greedy_packing(f: BooleanFunction, w: int, max_size: int = 2) -> list[int]:
    """Disjoint sensitive blocks found greedily: singletons, then larger sizes."""
    v = f(w)
    free = (1 << f.n) - 1
    chosen = []
    from itertools import combinations

    for k in range(1, max_size + 1):
        for combo in combinations(bits_of(free), k):
            b = sum(1 << i for i in combo)
            if b & free == b and f(w ^ b) != v:
                chosen.append(b)
                free &= ~b
    return chosen


def _subcube_constant(f: TruthTable, w: int, fixed: int) -> bool:
    comp = [i for i in range(f.n) if not (fixed >> i) & 1]
    if len(comp) > 24:
        return False
    from .core import scatter_indices

    idx = scatter_indices(comp, w & fixed)
    vals = f.values[idx]
    return bool((vals == vals[0]).all())


def _greedy_certificate(f: TruthTable, w: int) -> int:
    """A (not necessarily minimum) certificate at w: drop coordinates while valid."""
    s = (1 << f.n) - 1
    for i in range(f.n):
        trial = s & ~(1 << i)
        if _subcube_constant(f, w, trial):
            s = trial
    return s


def block_sensitivity_at(f: BooleanFunction, x, limits: Limits | None = None,
                         candidate_blocks=None) -> int:
    return block_sensitivity_witness(f, x, limits, candidate_blocks)[0]


def block_sensitivity_witness(f: BooleanFunction, x, limits: Limits | None = None,
                              candidate_blocks=None) -> tuple[int, list[Block]]:
    """bs(f, x) with one maximum packing of minimal sensitive blocks.

    For point functions only ``candidate_blocks`` are considered and the result
    is a lower bound, reported through LimitExceeded unless n is small.
    """
    limits = limits or default_limits()
    w = _word(f, x)
    if isinstance(f, PointFunction):
        if candidate_blocks is None:
            raise DomainError("point-function block sensitivity needs candidate blocks")
        v = f(w)
        masks = sorted({b.mask if isinstance(b, Block) else int(b) for b in candidate_blocks})
        sens = [b for b in masks if b and f(w ^ b) != v]
        count, chosen = _pack_sparse(sens)
        raise LimitExceeded(
            "point function: packing restricted to the supplied candidate blocks",
            bounds=(count, f.n),
        )
    if f.n > limits.bs:
        lo = len(_greedy_packing(f, w))
        hi = popcount(_greedy_certificate(f, w))
        raise LimitExceeded(f"bs at arity {f.n} exceeds limit {limits.bs}", bounds=(lo, hi))
    tt = kernels.as_table(f.values)
    count, chosen = kernels.block_sensitivity_at(tt, f.n, w)
    return count, [Block(f.n, b) for b in chosen]


def _pack_sparse(blocks: list[int]) -> tuple[int, list[int]]:
    """Exact packing over an explicit block list (any arity), by branching."""
    blocks = sorted(set(blocks))
    best: list[int] = []

    def go(i, free_used, chosen):
        nonlocal best
        if len(chosen) + (len(blocks) - i) <= len(best):
            return
        if i == len(blocks):
            best = list(chosen)
            return
        b = blocks[i]
        if not b & free_used:
            chosen.append(b)
            go(i + 1, free_used | b, chosen)
            chosen.pop()
        go(i + 1, free_used, chosen)

    go(0, 0, [])
    return len(best), best


def minimal_sensitive_blocks(f: TruthTable, x, limits: Limits | None = None) -> list[Block]:
    limits = limits or default_limits()
    _require_dense(f, "minimal block enumeration")
    if f.n > limits.bs:
        raise LimitExceeded(f"block enumeration at arity {f.n} exceeds limit {limits.bs}")
    w = _word(f, x)
    return [Block(f.n, b) for b in kernels.minimal_sensitive_blocks(kernels.as_table(f.values), f.n, w)]


def maximum_packings(f: TruthTable, x, limits: Limits | None = None) -> list[list[Block]]:
    """Every maximum family of pairwise disjoint minimal sensitive blocks at x."""
    blocks = [b.mask for b in minimal_sensitive_blocks(f, x, limits)]
    target = kernels.max_block_packing(blocks, f.n)[0]
    out: list[list[Block]] = []

    def go(i, used, chosen):
        if len(chosen) + (len(blocks) - i) < target:
            return
        if len(chosen) == target:
            out.append([Block(f.n, b) for b in chosen])
            return
        b = blocks[i]
        if not b & used:
            chosen.append(b)
            go(i + 1, used | b, chosen)
            chosen.pop()
        go(i + 1, used, chosen)

    if target:
        go(0, 0, [])
    return out


def block_sensitivity(f: TruthTable, limits: Limits | None = None) -> int:
    return block_sensitivity_argmax(f, limits)[0]


def block_sensitivity_argmax(f: TruthTable, limits: Limits | None = None) -> tuple[int, int]:
    """(bs(f), least input word attaining it)."""
    limits = limits or default_limits()
    _require_dense(f, "block sensitivity")
    if f.n > limits.bs:
        prof = sensitivity_profile(f)
        w = int(prof.argmax())
        lo = max(int(prof[w]), len(_greedy_packing(f, w)))
        hi = f.n
        if f.n <= limits.cert:
            hi = certificate_complexity(f, limits)
        deg = degree(f)
        hi = min(hi, 2 * deg * deg)
        raise LimitExceeded(f"bs at arity {f.n} exceeds limit {limits.bs}", bounds=(lo, max(lo, hi)))
    return kernels.block_sensitivity_max(kernels.as_table(f.values), f.n)


def bs_witness(f: TruthTable, limits: Limits | None = None) -> tuple[int, BitVector, list[Block]]:
    """bs(f), an input attaining it, and a maximum packing of minimal blocks there."""
    value, w = block_sensitivity_argmax(f, limits)
    count, blocks = block_sensitivity_witness(f, w, limits)
    assert count == value
    return value, BitVector(f.n, w), blocks


# -- certificates -----------------------------------------------------------

def certificate_at(f: TruthTable, x, limits: Limits | None = None) -> tuple[int, Block]:
    """Minimum certificate size at x with the lexicographically least witness."""
    limits = limits or default_limits()
    _require_dense(f, "certificate complexity")
    w = _word(f, x)
    if f.n > limits.cert:
        lo = sensitivity_at(f, w)
        hi = popcount(_greedy_certificate(f, w))
        raise LimitExceeded(f"C at arity {f.n} exceeds limit {limits.cert}", bounds=(lo, hi))
    size, mask = kernels.certificate_at(kernels.as_table(f.values), f.n, w)
    return size, Block(f.n, mask)


def certificate_complexity(f: TruthTable, limits: Limits | None = None) -> int:
    limits = limits or default_limits()
    _require_dense(f, "certificate complexity")
    if f.n > limits.cert:
        lo = sensitivity(f)
        if f.n <= limits.bs:
            lo = block_sensitivity(f, limits)
        hi = f.n
        if f.n <= limits.dtree:
            hi = decision_tree_depth(f, limits)
        raise LimitExceeded(f"C at arity {f.n} exceeds limit {limits.cert}", bounds=(lo, hi))
    return kernels.certificate_max(kernels.as_table(f.values), f.n)[0]


# -- decision trees ---------------------------------------------------------

def decision_tree_depth(f: TruthTable, limits: Limits | None = None) -> int:
    limits = limits or default_limits()
    _require_dense(f, "decision-tree depth")
    if f.n > limits.dtree:
        lo = max(degree(f), sensitivity(f))
        raise LimitExceeded(f"D at arity {f.n} exceeds limit {limits.dtree}", bounds=(lo, f.n))
    return int(kernels.decision_tree_depth(kernels.as_table(f.values), f.n))


def parity_tree_depth(f: TruthTable, limits: Limits | None = None) -> int:
    """Depth of an optimal decision tree querying parities of variable subsets."""
    limits = limits or default_limits()
    _require_dense(f, "parity-tree depth")
    if f.n > limits.dpar:
        affine = degree_mod2(f)
        if affine <= 1:
            # constants need no query, any other affine function exactly one
            return affine
        sparsity = int(np.count_nonzero(walsh_hadamard(1 - 2 * f.values.astype(np.int64))))
        lo = max(degree_mod2(f), math.ceil(math.log2(sparsity) / 2))
        hi = f.n
        if f.n <= limits.dtree:
            hi = decision_tree_depth(f, limits)
        raise LimitExceeded(f"D_parity at arity {f.n} exceeds limit {limits.dpar}", bounds=(lo, hi))
    return int(kernels.parity_tree_depth(f.bits, f.n))


# -- degrees ----------------------------------------------------------------

def degree(f: TruthTable) -> int:
    """Largest |S| with a nonzero Fourier coefficient of (-1)^f."""
    _require_dense(f, "degree")
    coeffs = walsh_hadamard(1 - 2 * f.values.astype(np.int64))
    support = np.nonzero(coeffs)[0]
    return int(popcounts(f.size)[support].max())


def degree_mod2(f: TruthTable) -> int:
    _require_dense(f, "mod-2 degree")
    coeffs = mobius_gf2(f.values.astype(np.int64))
    support = np.nonzero(coeffs)[0]
    if support.size == 0:
        return 0
    return int(popcounts(f.size)[support].max())


# -- reports ----------------------------------------------------------------

def _exact_or_bounds(n, fn):
    try:
        return Exact(int(fn()))
    except LimitExceeded as exc:
        lo, hi = exc.bounds or (0, n)
        return Bounds(int(lo), int(hi), str(exc))


def measure_report(f: BooleanFunction, names=MEASURES, limits: Limits | None = None) -> MeasureReport:
    limits = limits or default_limits()
    unknown = [m for m in names if m not in MEASURES]
    if unknown:
        raise DomainError(f"unknown measure(s): {', '.join(unknown)}; choose from {', '.join(MEASURES)}")
    report = MeasureReport(f.n)
    if isinstance(f, PointFunction):
        lo = _pointwise_lower_bound(f)
        reason = "point function: only pointwise evaluation is available"
        for name in names:
            report.entries[name] = Bounds(lo if name in ("s", "bs", "C", "D") else 0, f.n, reason)
        return report
    table = {
        "s": lambda: sensitivity(f),
        "bs": lambda: block_sensitivity(f, limits),
        "C": lambda: certificate_complexity(f, limits),
        "D": lambda: decision_tree_depth(f, limits),
        "deg": lambda: degree(f),
        "degf2": lambda: degree_mod2(f),
        "dpar": lambda: parity_tree_depth(f, limits),
    }
    for name in names:
        report.entries[name] = _exact_or_bounds(f.n, table[name])
    return report
