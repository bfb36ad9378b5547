"""Exact complexity measures of Boolean functions.

Variable x_j sits at bit j-1 of an input word; a truth table stores f(x) at
index x.  See ``bfc.core`` for the representations and ``bfc.cli`` for the
command line.
"""

__version__ = "0.1.0"

from .config import Limits, default_limits
from .core import (BitVector, Block, Permutation, PointFunction, TruthTable, compose, evaluate,
                   flip_block, is_invariant, negate_inputs, negate_output, orbit_transitive,
                   permute_inputs, restrict)
from .errors import (ArityError, BFCError, DomainError, InvariantViolation, LimitExceeded,
                     RelationViolation, SpecError)
from .kernels import BACKEND
from .measures import (Bounds, Exact, block_sensitivity, certificate_complexity, decision_tree_depth,
                       degree, degree_mod2, measure_report, parity_tree_depth, sensitivity)
from .spectral import comm_rank, fourier_transform
from .specs import build, parse_spec

__all__ = [
    "ArityError", "BACKEND", "BFCError", "BitVector", "Block", "Bounds", "DomainError", "Exact",
    "InvariantViolation", "LimitExceeded", "Limits", "Permutation", "PointFunction",
    "RelationViolation", "SpecError", "TruthTable", "block_sensitivity", "build",
    "certificate_complexity", "comm_rank", "compose", "decision_tree_depth", "default_limits",
    "degree", "degree_mod2", "evaluate", "flip_block", "fourier_transform", "is_invariant",
    "measure_report", "negate_inputs", "negate_output", "orbit_transitive", "parity_tree_depth",
    "parse_spec", "permute_inputs", "restrict", "sensitivity",
]
