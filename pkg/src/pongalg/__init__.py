"""
Pongalg - exact GF(2) computations with pong algebras and their bordered counterparts.

Usage:
    from pongalg import PongElement, atomic, AtomicDescriptor, verify_dd_relation

    r = atomic(AtomicDescriptor(4, "R", 2, 3), 2)   # summed over left idempotents
    r.d()
    verify_dd_relation(4, 2)          # [] when the structure relation holds

    from pongalg import VerificationRequest, run

    run(VerificationRequest("mu", m=4, k=2, inputs="v1, L2, L3, v4, R3, R2")).passed
"""

from .strands import (
    PongData,
    WeightVector,
    compose,
    cross,
    crossings,
    fold,
    format_pong,
    lift_apply,
    local_multiplicities,
    parse_pong,
    resolve,
)
from .pong import (
    AtomicDescriptor,
    Monomial,
    PongElement,
    atomic,
    atomic_length,
    enumerate_generators,
    factor_atomic,
    factor_descriptors,
    is_atomic,
    omega,
)
from .bordered import ClgElement, ClgPure, IdempotentState, L, R, U, clg_multiply, parse_clg
from .quotient import QuotElement, cone_piece, q_omega
from .complexes import ChainComplex, HomologySummary
from .pieces import enumerate_basis
from .homology import canonical_cycle, cycle_is_essential, homology, is_excessive, model_complex
from .dd import DDStructure, delta1, f_map, verify_dd_relation
from .cobar import CobarWord, cobar_piece, compare_orders, phi, verify_quasi_iso
from .hochschild import d_small, omega_class, shh
from .transfer import (
    AlgebraContext,
    build_contraction,
    check_omega_linearity,
    star_chain_solve,
    transfer_mu,
    verify_perm_sum,
)
from .checks import Verifier, Violation, VerificationError, check_rule
from .config import Settings
from .reports import VERSION, Report
from .store import ResultCache
from .shell import COMMANDS, HELP, VerificationRequest, VerificationShell, run
from .tikz import build_diagram_data, render_tikz

__version__ = VERSION
__all__ = [
    "PongData",
    "WeightVector",
    "compose",
    "cross",
    "crossings",
    "fold",
    "format_pong",
    "lift_apply",
    "local_multiplicities",
    "parse_pong",
    "resolve",
    "AtomicDescriptor",
    "Monomial",
    "PongElement",
    "atomic",
    "atomic_length",
    "enumerate_generators",
    "factor_atomic",
    "factor_descriptors",
    "is_atomic",
    "omega",
    "ClgElement",
    "ClgPure",
    "IdempotentState",
    "L",
    "R",
    "U",
    "clg_multiply",
    "parse_clg",
    "QuotElement",
    "cone_piece",
    "q_omega",
    "ChainComplex",
    "HomologySummary",
    "enumerate_basis",
    "canonical_cycle",
    "cycle_is_essential",
    "compare_orders",
    "check_omega_linearity",
    "homology",
    "is_excessive",
    "model_complex",
    "DDStructure",
    "delta1",
    "f_map",
    "verify_dd_relation",
    "CobarWord",
    "cobar_piece",
    "phi",
    "verify_quasi_iso",
    "d_small",
    "omega_class",
    "shh",
    "AlgebraContext",
    "build_contraction",
    "star_chain_solve",
    "transfer_mu",
    "verify_perm_sum",
    "Verifier",
    "Violation",
    "VerificationError",
    "check_rule",
    "Settings",
    "Report",
    "ResultCache",
    "COMMANDS",
    "HELP",
    "VerificationRequest",
    "VerificationShell",
    "run",
    "build_diagram_data",
    "render_tikz",
]
