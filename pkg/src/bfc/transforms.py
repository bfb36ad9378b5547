"""Exact integer butterflies over the 2^n table index (numpy int64/object)."""

import numpy as np


def _butterfly(values, op):
    a = np.array(values, dtype=np.int64 if values.dtype != object else object)
    size = a.shape[0]
    n = size.bit_length() - 1
    for i in range(n):
        h = 1 << i
        v = a.reshape(-1, 2, h)
        lo = v[:, 0, :].copy()
        hi = v[:, 1, :].copy()
        v[:, 0, :], v[:, 1, :] = op(lo, hi)
        a = v.reshape(size)
    return a


def walsh_hadamard(values):
    """Unnormalized transform: out[S] = sum_x values[x] * (-1)^|x & S|."""
    return _butterfly(np.asarray(values), lambda lo, hi: (lo + hi, lo - hi))


def mobius(values):
    """Coefficients c_S of the real multilinear form sum_S c_S prod_{i in S} x_i."""
    return _butterfly(np.asarray(values), lambda lo, hi: (lo, hi - lo))


def mobius_gf2(values):
    """Coefficients over GF(2) of the multilinear form (XOR-Moebius)."""
    return _butterfly(np.asarray(values), lambda lo, hi: (lo, hi ^ lo))


def popcounts(size):
    idx = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    while idx.any():
        out += idx & 1
        idx >>= 1
    return out
