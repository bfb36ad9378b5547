"""Hot-kernel backend, chosen once at import.

The compiled ``_ckernels`` extension is used when it imports; otherwise (or
with ``BFC_PURE_PYTHON=1``) the pure-Python twin in ``_pykernels`` is used.
Both expose the same functions with identical results.
"""

import os

import numpy as np

from . import _pykernels

_c = None
if os.environ.get("BFC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"
_impl = _c if _c is not None else _pykernels

# compiled shi sweep keeps q^(n-1) * n * 2^n inside int64
_SHI_C_MAX_N = 10


def as_table(values):
    return np.ascontiguousarray(values, dtype=np.uint8)


def sensitivity_at(tt, n, x):
    return _impl.sensitivity_at(tt, n, x)


def minimal_sensitive_blocks(tt, n, x):
    return _impl.minimal_sensitive_blocks(tt, n, x)


def max_block_packing(blocks, n):
    return _impl.max_block_packing(list(blocks), n)


def block_sensitivity_at(tt, n, x):
    return _impl.block_sensitivity_at(tt, n, x)


def block_sensitivity_max(tt, n):
    return _impl.block_sensitivity_max(tt, n)


def certificate_at(tt, n, x):
    return _impl.certificate_at(tt, n, x)


def certificate_max(tt, n):
    return _impl.certificate_max(tt, n)


def decision_tree_depth(tt, n):
    return _impl.decision_tree_depth(tt, n)


def parity_tree_depth(tt_bits, n):
    if _c is not None and n <= 6:
        return _c.parity_tree_depth(tt_bits, n)
    return _pykernels.parity_tree_depth(tt_bits, n)


def shi_vertex_sweep(tt, n, q):
    if _c is not None and n <= _SHI_C_MAX_N and q <= 32:
        return _c.shi_vertex_sweep(tt, n, q)
    return _pykernels.shi_vertex_sweep(tt, n, q)
