"""Obtuse lattice bases and sign-restricted shortest-vector enumeration."""
from .core import (DegenerateBasis, GramMatrix, GsData, InvariantViolation, LatticeBasis,
                   ReductionReport, UnimodularTransform, gram, gram_schmidt, is_obtuse,
                   obtuseness, parse_basis, read_basis, same_lattice, write_basis)
from .enumeration import EnumConfig, EnumResult, EnumStats, enumerate_svp, level_interval, radius_default
from .lll import is_lll_reduced, lll_reduce
from .reduce import MMatrixSystem, auto_reduce, obtuse_reduce, solve_coefficients
from .signgraph import SignGraph, build_sign_graph, find_partition, parity_signature, sign_flip_reduce

__version__ = "0.1.0"
