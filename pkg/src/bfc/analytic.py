"""Multilinear extension over [0,1]^n, restrictions to segments, and their derivatives.

All arithmetic is exact: rational points are scaled to a common denominator and
the polynomial is collapsed one variable at a time on Python integers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .config import Limits, default_limits
from .core import BitVector, TruthTable
from .errors import ArityError, DomainError, InvariantViolation, LimitExceeded
from .measures import sensitivity, sensitivity_at
from .transforms import mobius

Point = Sequence[Fraction | int]


@dataclass(frozen=True)
class MultilinearPoly:
    """sum_S coeffs[S] * prod_{i in S} x_i with integer coefficients."""

    n: int
    coeffs: tuple

    def monomials(self) -> dict[tuple[int, ...], int]:
        """Nonzero coefficients keyed by 1-indexed variable tuples."""
        out = {}
        for s, c in enumerate(self.coeffs):
            if c:
                out[tuple(i + 1 for i in range(self.n) if (s >> i) & 1)] = c
        return out

    def degree(self) -> int:
        return max((bin(s).count("1") for s, c in enumerate(self.coeffs) if c), default=0)


@dataclass(frozen=True)
class Line:
    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ArityError("segment endpoints have different dimensions")
        object.__setattr__(self, "a", tuple(Fraction(v) for v in self.a))
        object.__setattr__(self, "b", tuple(Fraction(v) for v in self.b))
        for v in self.a + self.b:
            if not 0 <= v <= 1:
                raise DomainError(f"endpoint coordinate {v} outside [0, 1]")

    @property
    def n(self) -> int:
        return len(self.a)

    @classmethod
    def between(cls, a: BitVector, b: BitVector) -> "Line":
        return cls(tuple(a.bit(j) for j in range(1, a.n + 1)), tuple(b.bit(j) for j in range(1, b.n + 1)))

    def at(self, t) -> tuple:
        t = Fraction(t)
        return tuple((1 - t) * x + t * y for x, y in zip(self.a, self.b))


def mobius_extend(f: TruthTable, limits: Limits | None = None) -> MultilinearPoly:
    limits = limits or default_limits()
    if f.n > limits.extension:
        raise LimitExceeded(f"extension on {f.n} variables exceeds the limit {limits.extension}")
    c = mobius(f.values.astype(np.int64))
    return MultilinearPoly(f.n, tuple(int(v) for v in c))


def eval_extension(p: MultilinearPoly, x: Point) -> Fraction:
    if len(x) != p.n:
        raise ArityError(f"point has {len(x)} coordinates, polynomial has {p.n} variables")
    xs = [Fraction(v) for v in x]
    for v in xs:
        if not 0 <= v <= 1:
            raise DomainError(f"coordinate {v} outside [0, 1]")
    den = math.lcm(*(v.denominator for v in xs)) if xs else 1
    nums = [v.numerator * (den // v.denominator) for v in xs]
    # collapse x_1 first: c'[S] = den * c[S] + num_1 * c[S + {1}]
    vals = list(p.coeffs)
    for num in nums:
        vals = [den * lo + num * hi for lo, hi in zip(vals[0::2], vals[1::2])]
    return Fraction(vals[0], den ** p.n)


def _check_t(t) -> Fraction:
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise DomainError(f"t = {t} outside [0, 1]")
    return t


def line_restriction(p: MultilinearPoly, line: Line, t) -> Fraction:
    """f_l(t) = f((1 - t) a + t b)."""
    return eval_extension(p, line.at(_check_t(t)))


def line_restriction_derivative(p: MultilinearPoly, line: Line, t) -> Fraction:
    """f_l'(t) = sum_i (b_i - a_i) * (f(x^(i,1)) - f(x^(i,0))) at x = (1 - t) a + t b."""
    if line.n != p.n:
        raise ArityError("segment and polynomial dimensions differ")
    x = list(line.at(_check_t(t)))
    total = Fraction(0)
    for i in range(p.n):
        step = line.b[i] - line.a[i]
        if not step:
            continue
        hi = x.copy()
        lo = x.copy()
        hi[i] = Fraction(1)
        lo[i] = Fraction(0)
        total += step * (eval_extension(p, hi) - eval_extension(p, lo))
    return total


def antipodal_derivative_check(f: TruthTable, a, poly: MultilinearPoly | None = None) -> int:
    """|f_l'(0)| on the segment from a to its complement; must equal s(f, a).

    The signed value is (1 - 2 f(a)) * s(f, a).
    """
    if isinstance(a, int):
        a = BitVector(f.n, a)
    if a.n != f.n:
        raise ArityError("vertex and function arities differ")
    poly = poly or mobius_extend(f)
    d = line_restriction_derivative(poly, Line.between(a, a.complement()), 0)
    s = sensitivity_at(f, a)
    if d.denominator != 1 or abs(d) != s:
        raise InvariantViolation(f"antipodal derivative {d} != s(f, {a}) = {s} for {f.to_hex()}")
    if d != (1 - 2 * f(a)) * s:
        raise InvariantViolation(f"antipodal derivative {d} has the wrong sign at {a}")
    return int(abs(d))


def antipodal_derivatives(f: TruthTable) -> np.ndarray:
    """Signed f_l'(0) on the segment a -> not a, for every vertex a at once.

    At a vertex the partial differences read table entries directly:
    f_l'(0) = sum_i (1 - 2 a_i) (f(a with x_i = 1) - f(a with x_i = 0)).
    """
    idx = np.arange(f.size)
    v = f.values.astype(np.int64)
    out = np.zeros(f.size, dtype=np.int64)
    for i in range(f.n):
        bit = 1 << i
        step = 1 - 2 * ((idx >> i) & 1)
        out += step * (v[idx | bit] - v[idx & ~bit])
    return out


def derivative_weights(n: int, line: Line, t) -> tuple[np.ndarray, int]:
    """Integer weights W and denominator d with f_l'(t) = (W . f) / d for all f on n variables.

    Uses the product form of the extension,
    d/dx_i f(x) = sum_v f(v) (2 v_i - 1) prod_{j != i} x_j^v_j (1 - x_j)^(1 - v_j),
    so it is independent of the Moebius coefficients.
    """
    if line.n != n:
        raise ArityError("segment and function dimensions differ")
    x = line.at(_check_t(t))
    step = [bj - aj for aj, bj in zip(line.a, line.b)]
    weights = []
    for v in range(1 << n):
        w = Fraction(0)
        for i in range(n):
            if not step[i]:
                continue
            prod = Fraction(1)
            for j in range(n):
                if j != i:
                    prod *= x[j] if (v >> j) & 1 else 1 - x[j]
            w += step[i] * (1 if (v >> i) & 1 else -1) * prod
        weights.append(w)
    den = math.lcm(*(w.denominator for w in weights)) if weights else 1
    return np.array([int(w * den) for w in weights], dtype=np.int64), den


def t_grid(points: int = 33) -> list[Fraction]:
    if points < 2:
        raise DomainError("a t-grid needs at least 2 points")
    return [Fraction(j, points - 1) for j in range(points)]


def vertex_sweep(f: TruthTable, points: int = 33) -> Fraction:
    """max |f_l'(t)| over all segments between distinct cube vertices, t on the grid.

    On such a segment the extension is sum_w N_w t^w (1-t)^(m-w), which the
    kernel differentiates exactly on integers.
    """
    q = points - 1
    if q < 1:
        raise DomainError("a t-grid needs at least 2 points")
    if f.n == 0:
        return Fraction(0)
    num = kernels.shi_vertex_sweep(kernels.as_table(f.values), f.n, q)
    return Fraction(num, q ** (f.n - 1))


def random_interior_lines(n: int, count: int, seed: int = 0, den: int = 16) -> list[Line]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        a = tuple(Fraction(rng.randint(0, den), den) for _ in range(n))
        b = tuple(Fraction(rng.randint(0, den), den) for _ in range(n))
        out.append(Line(a, b))
    return out


def sup_derivative_sample(f: TruthTable, points: int = 33, random_lines: int = 0,
                          seed: int = 0) -> Fraction:
    """Largest |f_l'(t)| found over the vertex sweep plus optional random lines.

    Every value is a lower bound on sup_l ||f_l'||; none may exceed s(f).
    """
    best = vertex_sweep(f, points)
    if random_lines:
        poly = mobius_extend(f)
        for line in random_interior_lines(f.n, random_lines, seed):
            for t in t_grid(points):
                best = max(best, abs(line_restriction_derivative(poly, line, t)))
    return best


def shi_sandwich(f: TruthTable, points: int = 33) -> tuple[Fraction, int]:
    """(vertex-sweep maximum, s(f)); raises unless they coincide exactly."""
    sup = vertex_sweep(f, points)
    s = sensitivity(f)
    if sup != s:
        raise InvariantViolation(f"vertex sweep {sup} != s(f) = {s} for {f.to_hex()}")
    return sup, s
