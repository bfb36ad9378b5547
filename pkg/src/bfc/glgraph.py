"""Induced subgraphs of the hypercube Q_n and their correspondence with functions.

A function f maps to the vertex set {x : (-1)^f(x) * (-1)^|x| = +1}, i.e. the
inputs where f agrees with parity.  The own-side degree of a vertex (its
Hamming neighbours on the same side of the cut) then equals s(f, x).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import TruthTable, _int_to_values, _values_to_int, hex_digits
from .errors import DomainError
from .transforms import popcounts


@dataclass(frozen=True)
class CubeSubgraph:
    """V(G) as a 2^n-bit membership word (vertex x present iff bit x is set)."""

    n: int
    members: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("dimension must be non-negative")
        if self.members < 0 or self.members >> (1 << self.n):
            raise DomainError("membership word has bits beyond 2^n vertices")

    @classmethod
    def from_values(cls, values) -> "CubeSubgraph":
        values = np.asarray(values, dtype=np.uint8)
        n = int(values.size).bit_length() - 1
        if values.size != 1 << n:
            raise DomainError("membership length is not a power of two")
        return cls(n, _values_to_int(values))

    @classmethod
    def full(cls, n: int) -> "CubeSubgraph":
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def empty(cls, n: int) -> "CubeSubgraph":
        return cls(n, 0)

    @classmethod
    def from_hex(cls, text: str) -> "CubeSubgraph":
        parts = text.strip().split(":")
        if len(parts) != 3 or parts[0] != "vs":
            raise DomainError(f"expected vs:<n>:<hex>, got {text!r}")
        try:
            n = int(parts[1])
            word = int(parts[2], 16)
        except ValueError:
            raise DomainError(f"malformed vertex set {text!r}") from None
        if len(parts[2]) != hex_digits(n):
            raise DomainError(f"vs:{n} needs {hex_digits(n)} hex digits, got {len(parts[2])}")
        return cls(n, word)

    def to_hex(self) -> str:
        return f"vs:{self.n}:{self.members:0{hex_digits(self.n)}X}"

    @cached_property
    def values(self) -> np.ndarray:
        v = _int_to_values(self.members, 1 << self.n)
        v.flags.writeable = False
        return v

    def __contains__(self, x: int) -> bool:
        return bool((self.members >> x) & 1)

    @property
    def size(self) -> int:
        return bin(self.members).count("1")

    def complement(self) -> "CubeSubgraph":
        return CubeSubgraph(self.n, self.members ^ ((1 << (1 << self.n)) - 1))


def _parity_values(n: int) -> np.ndarray:
    return (popcounts(1 << n) & 1).astype(np.uint8)


def function_to_subgraph(f: TruthTable) -> CubeSubgraph:
    return CubeSubgraph.from_values(1 - (f.values ^ _parity_values(f.n)))


def subgraph_to_function(g: CubeSubgraph) -> TruthTable:
    return TruthTable.from_values((1 - g.values) ^ _parity_values(g.n))


def times_parity(f: TruthTable) -> TruthTable:
    """The product f * p in the +-1 convention, i.e. f xor parity."""
    return TruthTable.from_values(f.values ^ _parity_values(f.n))


def own_side_degrees(g: CubeSubgraph) -> np.ndarray:
    """Number of Hamming neighbours of each vertex lying on the same side as it."""
    m = g.values
    idx = np.arange(1 << g.n)
    deg = np.zeros(1 << g.n, dtype=np.int64)
    for i in range(g.n):
        deg += m == m[idx ^ (1 << i)]
    return deg


def max_degrees(g: CubeSubgraph) -> tuple[int, int]:
    """(max degree inside G, max degree inside the complement); 0 when a side is empty."""
    deg = own_side_degrees(g)
    inside = g.values.astype(bool)
    d_in = int(deg[inside].max()) if inside.any() else 0
    d_out = int(deg[~inside].max()) if (~inside).any() else 0
    return d_in, d_out


def gamma(g: CubeSubgraph) -> int:
    return max(max_degrees(g)) if g.n else 0


def balanced(g: CubeSubgraph) -> bool:
    """True iff |V(G)| = 2^(n-1), where the degree-gap hypothesis fails."""
    return g.n >= 1 and g.size == 1 << (g.n - 1)


def gl_summary(g: CubeSubgraph) -> dict:
    d_in, d_out = max_degrees(g)
    return {
        "n": g.n,
        "vertices": g.size,
        "gamma": max(d_in, d_out),
        "max_degree_inside": d_in,
        "max_degree_outside": d_out,
        "balanced": balanced(g),
    }
