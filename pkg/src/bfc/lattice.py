"""Two-colourings of Z^b built from a function and disjoint blocks at an input.

Each block S_i gets a cyclic reflected Gray code over 2^|S_i| states, rotated
so that state 0 is x restricted to S_i.  A lattice point a is sent to the
cube vertex phi(a) that agrees with x off the blocks and reads the Gray code
at a_i mod 2^|S_i| on block i.  The colour is red iff f(phi(a)) = f(x).

The periodic extension of the Gray code to negative integers is a choice:
any cyclic code with unit steps works, and this one keeps colourings periodic
so that exact S(C) is a finite sweep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import BitVector, Block, bits_of, popcount
from .errors import ArityError, DomainError, LimitExceeded

BOX_BUDGET = 10 ** 7
GRAY_CODE = "reflected binary, cyclic, rotated to start at x|S"


def gray_code(m: int) -> list[int]:
    return [j ^ (j >> 1) for j in range(1 << m)]


def _scatter(local: int, positions: Sequence[int]) -> int:
    word = 0
    for k, pos in enumerate(positions):
        if (local >> k) & 1:
            word |= 1 << pos
    return word


def _gather(word: int, positions: Sequence[int]) -> int:
    return sum(((word >> pos) & 1) << k for k, pos in enumerate(positions))


def block_code(x: int, block: Block) -> tuple[int, ...]:
    """Gray code for one block as full input words restricted to the block bits."""
    pos = bits_of(block.mask)
    g = gray_code(len(pos))
    start = g.index(_gather(x, pos))
    return tuple(_scatter(g[(start + j) % len(g)], pos) for j in range(len(g)))


@dataclass(frozen=True)
class LatticeColoring:
    f: object
    x: BitVector
    blocks: tuple
    codes: tuple

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.codes)

    @property
    def base(self) -> int:
        union = 0
        for blk in self.blocks:
            union |= blk.mask
        return self.x.word & ~union

    def phi(self, a: Sequence[int]) -> int:
        if len(a) != self.b:
            raise ArityError(f"lattice point has {len(a)} coordinates, expected {self.b}")
        w = self.base
        for ai, code in zip(a, self.codes):
            w |= code[ai % len(code)]
        return w

    def color(self, a: Sequence[int]) -> int:
        return self.f(self.phi(a))

    def red(self, a: Sequence[int]) -> bool:
        return self.color(a) == self.f(self.x.word)


def build_coloring(f, x, blocks: Sequence[Block], strict: bool = False) -> LatticeColoring:
    if isinstance(x, int):
        x = BitVector(f.n, x)
    if x.n != f.n:
        raise ArityError("input and function arities differ")
    used = 0
    for blk in blocks:
        if blk.n != f.n:
            raise ArityError("block and function arities differ")
        if not blk.mask:
            raise DomainError("blocks must be nonempty")
        if blk.mask & used:
            raise DomainError(f"block {blk} overlaps an earlier block")
        used |= blk.mask
        if strict and f(x.word ^ blk.mask) == f(x.word):
            raise DomainError(f"block {blk} is not sensitive at {x}")
    codes = tuple(block_code(x.word, blk) for blk in blocks)
    return LatticeColoring(f, x, tuple(blocks), codes)


def coloring_sensitivity_at(c: LatticeColoring, a: Sequence[int]) -> int:
    here = c.color(a)
    count = 0
    for i in range(c.b):
        for step in (-1, 1):
            nb = list(a)
            nb[i] += step
            count += c.color(nb) != here
    return count


@dataclass(frozen=True)
class BoxSensitivity:
    value: int
    radius: int
    exact: bool

    def to_json(self):
        return {"value": self.value, "radius": self.radius, "exact": self.exact}


def coloring_sensitivity_box(c: LatticeColoring, radius: int, budget: int = BOX_BUDGET) -> BoxSensitivity:
    """max S(a, C) over [-r, r]^b; exact once the box spans a period on every axis."""
    if radius < 0:
        raise DomainError("radius must be non-negative")
    points = (2 * radius + 1) ** c.b
    if points > budget:
        raise LimitExceeded(f"box of {points} points exceeds the budget {budget}")
    best = 0
    for a in itertools.product(range(-radius, radius + 1), repeat=c.b):
        best = max(best, coloring_sensitivity_at(c, a))
    exact = all(2 * radius + 1 >= p for p in c.periods)
    return BoxSensitivity(best, radius, exact)


def coloring_sensitivity_exact(c: LatticeColoring, budget: int = BOX_BUDGET) -> int:
    """S(C) by sweeping one period box; neighbour words differ by one Gray step."""
    size = 1
    for p in c.periods:
        size *= p
    if size > budget:
        raise LimitExceeded(f"period box of {size} points exceeds the budget {budget}")
    f = c.f
    base = c.base
    codes = c.codes
    best = 0
    for idx in itertools.product(*(range(p) for p in c.periods)):
        w = base
        for j, code in zip(idx, codes):
            w |= code[j]
        here = f(w)
        s = 0
        for j, code in zip(idx, codes):
            p = len(code)
            cur = code[j]
            s += f(w ^ cur ^ code[(j + 1) % p]) != here
            s += f(w ^ cur ^ code[(j - 1) % p]) != here
        best = max(best, s)
    return best


def nontrivial(c: LatticeColoring) -> bool:
    """Origin red (always) and some blue point on every coordinate axis."""
    origin = c.f(c.x.word)
    for i, code in enumerate(c.codes):
        others = c.base
        for k, other in enumerate(c.codes):
            if k != i:
                others |= other[0]
        if all(c.f(others | word) == origin for word in code):
            return False
    return True


def parse_blocks(text: str, n: int) -> list[Block]:
    """``"1,2|3|4,5"`` -> blocks {1,2}, {3}, {4,5}."""
    out = []
    for part in text.split("|"):
        part = part.strip()
        if not part:
            raise DomainError(f"empty block in {text!r}")
        try:
            members = [int(v) for v in part.split(",")]
        except ValueError:
            raise DomainError(f"malformed block list {text!r}") from None
        out.append(Block.from_members(n, members))
    return out


def describe(c: LatticeColoring) -> dict:
    return {
        "b": c.b,
        "input": str(c.x),
        "blocks": [list(blk.members) for blk in c.blocks],
        "periods": list(c.periods),
        "block_sizes": [popcount(blk.mask) for blk in c.blocks],
        "gray_code": GRAY_CODE,
    }
