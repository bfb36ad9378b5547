"""Representations of Boolean functions f: {0,1}^n -> {0,1}.

Bit order is fixed everywhere: variable j (1-indexed) lives at bit j-1 of an
input word, and entry i of a truth table is f evaluated at the word i.
Strings like ``"110"`` list x_1 first.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import default_limits
from .errors import ArityError, DomainError, LimitExceeded


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(mask: int) -> list[int]:
    """0-based positions of the set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class BitVector:
    n: int
    word: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("arity must be non-negative")
        if self.word < 0 or self.word >> self.n:
            raise DomainError(f"word {self.word:#x} has bits above position {self.n - 1}")

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        text = text.replace(" ", "").replace("_", "")
        if not set(text) <= {"0", "1"}:
            raise DomainError(f"not a bit string: {text!r}")
        word = 0
        for j, ch in enumerate(text):
            if ch == "1":
                word |= 1 << j
        return cls(len(text), word)

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, (1 << n) - 1)

    def bit(self, j: int) -> int:
        """Value of variable x_j (1-indexed)."""
        if not 1 <= j <= self.n:
            raise DomainError(f"variable index {j} outside [1, {self.n}]")
        return (self.word >> (j - 1)) & 1

    def weight(self) -> int:
        return popcount(self.word)

    def complement(self) -> "BitVector":
        return BitVector(self.n, self.word ^ ((1 << self.n) - 1))

    def __str__(self):
        return "".join("1" if (self.word >> j) & 1 else "0" for j in range(self.n))


@dataclass(frozen=True)
class Block:
    """A subset of [n] stored as a bitmask (member j at bit j-1)."""

    n: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise DomainError(f"block {self.mask:#x} is not a subset of [{self.n}]")

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "Block":
        mask = 0
        for j in members:
            if not 1 <= j <= n:
                raise DomainError(f"block member {j} outside [1, {n}]")
            mask |= 1 << (j - 1)
        return cls(n, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in bits_of(self.mask))

    def __len__(self):
        return popcount(self.mask)

    def __str__(self):
        return "{" + ",".join(map(str, self.members)) + "}"


def _values_to_int(values: np.ndarray) -> int:
    packed = np.packbits(values.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _int_to_values(bits: int, size: int) -> np.ndarray:
    nbytes = max(1, (size + 7) // 8)
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].copy()


@dataclass(frozen=True)
class TruthTable:
    """Dense table of 2^n packed bits."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("arity must be non-negative")
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise DomainError("table has bits beyond 2^n entries")

    @classmethod
    def from_values(cls, values: Sequence[int] | np.ndarray) -> "TruthTable":
        arr = np.asarray(values, dtype=np.uint8)
        size = arr.shape[0]
        n = size.bit_length() - 1
        if size != 1 << n:
            raise DomainError(f"table length {size} is not a power of two")
        if arr.size and arr.max() > 1:
            raise DomainError("table values must be 0 or 1")
        return cls(n, _values_to_int(arr))

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[int], int], limit: int | None = None) -> "TruthTable":
        limit = default_limits().dense if limit is None else limit
        if n > limit:
            raise LimitExceeded(f"dense table on {n} variables exceeds the dense limit {limit}")
        return cls.from_values(np.fromiter((fn(w) for w in range(1 << n)), dtype=np.uint8, count=1 << n))

    @classmethod
    def constant(cls, n: int, value: int) -> "TruthTable":
        return cls(n, ((1 << (1 << n)) - 1) if value else 0)

    @classmethod
    def from_hex(cls, text: str) -> "TruthTable":
        m = re.fullmatch(r"tt:(\d+):([0-9a-fA-F]+)", text.strip())
        if not m:
            raise DomainError(f"not a truth-table literal: {text!r}")
        n = int(m.group(1))
        digits = m.group(2)
        want = hex_digits(n)
        if len(digits) != want:
            raise DomainError(f"tt:{n} needs exactly {want} hex digits, got {len(digits)}")
        return cls(n, int(digits, 16))

    @property
    def size(self) -> int:
        return 1 << self.n

    @cached_property
    def values(self) -> np.ndarray:
        """Read-only uint8 array of the 2^n table entries."""
        arr = _int_to_values(self.bits, self.size)
        arr.flags.writeable = False
        return arr

    def __call__(self, x: int | BitVector) -> int:
        if isinstance(x, BitVector):
            if x.n != self.n:
                raise ArityError(f"input has arity {x.n}, function has {self.n}")
            x = x.word
        return (self.bits >> x) & 1

    def to_hex(self) -> str:
        return f"tt:{self.n}:{self.bits:0{hex_digits(self.n)}X}"

    def weight(self) -> int:
        return popcount(self.bits)

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << self.size) - 1

    def complement(self) -> "TruthTable":
        return TruthTable(self.n, self.bits ^ ((1 << self.size) - 1))

    def __str__(self):
        return self.to_hex()


def hex_digits(n: int) -> int:
    return max(1, ((1 << n) + 3) // 4)


@dataclass(frozen=True)
class PointFunction:
    """Black-box evaluator on input words, for arities too large to tabulate."""

    n: int
    fn: Callable[[int], int] = field(compare=False)
    name: str = ""

    def __call__(self, x: int | BitVector) -> int:
        if isinstance(x, BitVector):
            if x.n != self.n:
                raise ArityError(f"input has arity {x.n}, function has {self.n}")
            x = x.word
        return self.fn(x) & 1

    def to_table(self, limit: int | None = None) -> TruthTable:
        return TruthTable.from_callable(self.n, self.fn, limit)


BooleanFunction = TruthTable | PointFunction


def evaluate(f: BooleanFunction, x: BitVector) -> int:
    if x.n != f.n:
        raise ArityError(f"input has arity {x.n}, function has {f.n}")
    return f(x.word)


def flip_block(x: BitVector, block: Block) -> BitVector:
    if x.n != block.n:
        raise ArityError(f"input has arity {x.n}, block lives in [{block.n}]")
    return BitVector(x.n, x.word ^ block.mask)


def scatter_indices(positions: Sequence[int], base: int = 0) -> np.ndarray:
    """Words ``base | spread(k)`` for k in range(2^len(positions)), bit j of k going to positions[j]."""
    k = np.arange(1 << len(positions), dtype=np.int64)
    out = np.full(k.shape, base, dtype=np.int64)
    for j, pos in enumerate(positions):
        out |= ((k >> j) & 1) << pos
    return out


def restrict(f: TruthTable, fixed: Block, assignment: BitVector) -> TruthTable:
    """Subfunction with the ``fixed`` variables set from ``assignment``.

    Free variables are renumbered in ascending original order.
    """
    if fixed.n != f.n or assignment.n != f.n:
        raise ArityError("restriction arguments must share the function's arity")
    if assignment.word & ~fixed.mask:
        raise DomainError("assignment sets a variable outside the fixed block")
    free = [i for i in range(f.n) if not (fixed.mask >> i) & 1]
    idx = scatter_indices(free, assignment.word)
    return TruthTable.from_values(f.values[idx])


def compose(f: TruthTable, g: TruthTable, limit: int | None = None) -> TruthTable:
    """f ◇ g: block i of g.n variables feeds argument i of f.

    Variable x_ij of the result sits at bit (i-1)*g.n + (j-1).
    """
    limit = default_limits().dense if limit is None else limit
    m, k = f.n, g.n
    total = m * k
    if total > limit:
        raise LimitExceeded(f"composition has {m}*{k} = {total} variables, above the dense limit {limit}")
    words = np.arange(1 << total, dtype=np.int64)
    gv = g.values.astype(np.int64)
    inner = np.zeros_like(words)
    block_mask = (1 << k) - 1
    for i in range(m):
        inner |= gv[(words >> (i * k)) & block_mask] << i
    return TruthTable.from_values(f.values[inner])


def negate_output(f: TruthTable) -> TruthTable:
    return f.complement()


def negate_inputs(f: TruthTable) -> TruthTable:
    """g(x) = f(not x)."""
    return TruthTable.from_values(f.values[::-1])


# -- permutations -----------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """Bijection on [n]; ``images[i-1]`` is sigma(i)."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise DomainError(f"not a bijection on [{n}]: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def cyclic_shift(cls, n: int, by: int = 1) -> "Permutation":
        return cls(tuple((i + by) % n + 1 for i in range(n)))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity."""
        images = list(range(1, n + 1))
        seen = set()
        body = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)*", body):
            raise DomainError(f"malformed cycle notation: {text!r}")
        for cyc in re.findall(r"\(([^)]*)\)", body):
            elems = [int(t) for t in re.split(r"[\s,]+", cyc.strip()) if t]
            for e in elems:
                if not 1 <= e <= n or e in seen:
                    raise DomainError(f"invalid or repeated point {e} in {text!r}")
                seen.add(e)
            for a, b in zip(elems, elems[1:] + elems[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def to_cycles(self) -> str:
        seen = set()
        parts = []
        for start in range(1, self.n + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"

    def apply_to_word(self, word: int) -> int:
        """Word y with y_i = x_sigma(i)."""
        out = 0
        for i, j in enumerate(self.images):
            out |= ((word >> (j - 1)) & 1) << i
        return out


def permute_inputs(f: TruthTable, sigma: Permutation) -> TruthTable:
    """g(x) = f(x_sigma(1), ..., x_sigma(n))."""
    if sigma.n != f.n:
        raise ArityError("permutation and function arities differ")
    words = np.arange(f.size, dtype=np.int64)
    y = np.zeros_like(words)
    for i, j in enumerate(sigma.images):
        y |= ((words >> (j - 1)) & 1) << i
    return TruthTable.from_values(f.values[y])


def is_invariant(f: BooleanFunction, sigma: Permutation, samples: int = 10_000, seed: int = 0) -> bool:
    """Exact for tables; for point functions only "not falsified" on random inputs."""
    if sigma.n != f.n:
        raise ArityError("permutation and function arities differ")
    if isinstance(f, TruthTable):
        return permute_inputs(f, sigma).bits == f.bits
    rng = random.Random(seed)
    for _ in range(samples):
        x = rng.getrandbits(f.n) if f.n else 0
        if f(x) != f(sigma.apply_to_word(x)):
            return False
    return True


def orbit_transitive(generators: Sequence[Permutation], n: int) -> bool:
    """Whether the group generated acts on [n] with a single orbit."""
    for g in generators:
        if g.n != n:
            raise DomainError(f"generator {g.to_cycles()} is not a permutation of [{n}]")
    if n <= 1:
        return True
    moves = list(generators) + [g.inverse() for g in generators]
    orbit = {1}
    frontier = [1]
    while frontier:
        i = frontier.pop()
        for g in moves:
            j = g(i)
            if j not in orbit:
                orbit.add(j)
                frontier.append(j)
    return len(orbit) == n
