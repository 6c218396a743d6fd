"""Exact 3-Hitting Set solver with a measure-and-conquer verifier."""

from .hypergraph import Hypergraph, InvariantViolation, minus, plus, two_section
from .instance_io import GenConfig, ParseError, generate, parse, serialize
from .measure import PsiTable, branching_number, bundled_psi4, check_properties, dominates, mu
from .oracle import oracle_decide, oracle_min
from .rules import Instance, select_rule
from .solver import SolveReport, SolverConfig, solve, verify_hitting
from .vectors import enumerate_vectors, verify_rule

__all__ = [
    "GenConfig", "Hypergraph", "Instance", "InvariantViolation", "ParseError", "PsiTable",
    "SolveReport", "SolverConfig", "branching_number", "bundled_psi4", "check_properties",
    "dominates", "enumerate_vectors", "generate", "minus", "mu", "oracle_decide", "oracle_min",
    "parse", "plus", "select_rule", "serialize", "solve", "two_section", "verify_hitting",
    "verify_rule",
]
