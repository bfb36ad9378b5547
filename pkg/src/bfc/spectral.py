"""Exact Fourier spectra and exact ranks of the AND/OR/XOR communication matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import Limits, default_limits
from .core import TruthTable, negate_inputs  # noqa: F401  (re-exported)
from .errors import DomainError, InvariantViolation, LimitExceeded
from .transforms import popcounts, walsh_hadamard

ZERO_ONE = "01"
PLUS_MINUS = "pm"
COMBINERS = ("and", "or", "xor")


@dataclass(frozen=True)
class FourierSpectrum:
    """Coefficients f_hat(S) = numerators[S] / 2^n, S a bitmask."""

    n: int
    numerators: tuple

    def __post_init__(self):
        if len(self.numerators) != 1 << self.n:
            raise ValueError("spectrum length must be 2^n")

    def coefficient(self, s: int) -> Fraction:
        return Fraction(self.numerators[s], 1 << self.n)

    def support(self) -> list[int]:
        return [s for s, a in enumerate(self.numerators) if a]

    @property
    def sparsity(self) -> int:
        return sum(1 for a in self.numerators if a)

    def parseval_sum(self) -> int:
        return sum(a * a for a in self.numerators)

    def degree(self) -> int:
        supp = self.support()
        return max((bin(s).count("1") for s in supp), default=0)

    def to_json(self, support_only: bool = True):
        return [
            {"S": s, "num": int(a), "log2den": self.n}
            for s, a in enumerate(self.numerators)
            if a or not support_only
        ]


def _signed(f: TruthTable) -> np.ndarray:
    return 1 - 2 * f.values.astype(np.int64)


def fourier_transform(f: TruthTable) -> FourierSpectrum:
    """Spectrum of (-1)^f by an integer Walsh-Hadamard transform."""
    coeffs = walsh_hadamard(_signed(f))
    spec = FourierSpectrum(f.n, tuple(int(a) for a in coeffs))
    if spec.parseval_sum() != 1 << (2 * f.n):
        raise InvariantViolation(f"Parseval failed for {f.to_hex()}")
    return spec


def zero_one_transform(f: TruthTable) -> FourierSpectrum:
    """Spectrum of the 0/1-valued f (no Parseval normalisation)."""
    coeffs = walsh_hadamard(f.values.astype(np.int64))
    return FourierSpectrum(f.n, tuple(int(a) for a in coeffs))


def min_nonzero_coeff(spec: FourierSpectrum) -> Fraction:
    return min(abs(spec.coefficient(s)) for s in spec.support())


def spectral_l1(spec: FourierSpectrum) -> Fraction:
    return Fraction(sum(abs(a) for a in spec.numerators), 1 << spec.n)


def xor_rank_via_spectrum(f: TruthTable, convention: str = PLUS_MINUS) -> int:
    """Rank of M[x, y] = f(x xor y) read off as the number of nonzero eigenvalues.

    The characters chi_S are a common orthogonal eigenbasis with eigenvalue
    2^n times the S-th coefficient, so the rank is the spectral sparsity.
    """
    if convention == PLUS_MINUS:
        return fourier_transform(f).sparsity
    if convention == ZERO_ONE:
        return zero_one_transform(f).sparsity
    raise DomainError(f"unknown value convention {convention!r}")


def comm_matrix(f: TruthTable, combiner: str, convention: str) -> np.ndarray:
    idx = np.arange(f.size)
    x = idx[:, None]
    y = idx[None, :]
    if combiner == "and":
        z = x & y
    elif combiner == "or":
        z = x | y
    elif combiner == "xor":
        z = x ^ y
    else:
        raise DomainError(f"unknown combiner {combiner!r}")
    vals = f.values.astype(np.int64)
    if convention == PLUS_MINUS:
        vals = 1 - 2 * vals
    elif convention != ZERO_ONE:
        raise DomainError(f"unknown value convention {convention!r}")
    return vals[z]


def bareiss_rank(matrix) -> int:
    """Exact rank over Q by fraction-free elimination on Python integers.

    Every intermediate entry is a minor of the input, so the divisions by the
    previous pivot are exact.
    """
    a = np.array(matrix, dtype=object)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    rows, cols = a.shape
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = a[r, c]
        if r + 1 < rows:
            below = a[r + 1:, c + 1:]
            col = a[r + 1:, c]
            a[r + 1:, c + 1:] = (piv * below - np.outer(col, a[r, c + 1:])) // prev
            a[r + 1:, c] = 0
        prev = piv
        r += 1
    return r


_PRIMES = (2147483629, 2147483587)


def modular_rank(matrix, p: int) -> int:
    """Rank over GF(p); p < 2^31 keeps int64 products exact."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        factors = a[r + 1:, c].copy()
        a[r + 1:] = (a[r + 1:] - np.outer(factors, a[r]) % p) % p
        r += 1
    return r


def comm_rank(f: TruthTable, combiner: str, convention: str = ZERO_ONE,
              limits: Limits | None = None, method: str = "exact") -> int:
    return comm_rank_labeled(f, combiner, convention, limits, method)[0]


def comm_rank_labeled(f: TruthTable, combiner: str, convention: str = ZERO_ONE,
                      limits: Limits | None = None, method: str = "exact") -> tuple[int, str]:
    """Rank of M[x, y] = f(x op y) with the path that produced it.

    ``method="modular"`` accepts a rank only when two primes agree, else falls
    back to exact elimination; the label says which happened.
    """
    limits = limits or default_limits()
    if f.n > limits.rank:
        raise LimitExceeded(f"rank of a 2^{f.n} square matrix exceeds the rank limit {limits.rank}")
    m = comm_matrix(f, combiner, convention)
    if method == "modular":
        r1 = modular_rank(m, _PRIMES[0])
        r2 = modular_rank(m, _PRIMES[1])
        if r1 == r2:
            return r1, "modular"
    elif method != "exact":
        raise DomainError(f"unknown rank method {method!r}")
    return bareiss_rank(m), "exact"


def coefficient_granularity(spec: FourierSpectrum) -> int:
    """Least e such that every coefficient is an integer multiple of 2^-e."""
    e = 0
    for a in spec.numerators:
        if a == 0:
            continue
        frac = Fraction(a, 1 << spec.n)
        den = frac.denominator
        e = max(e, den.bit_length() - 1)
    return e


def support_degrees(spec: FourierSpectrum) -> np.ndarray:
    return popcounts(1 << spec.n)[np.array(spec.support(), dtype=np.int64)]
