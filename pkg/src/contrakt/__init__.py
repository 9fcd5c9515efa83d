"""Labeled graph contraction: exact solvers, certificates, hardness gadgets and bound checks."""

from .contractibility import ContractibilityResult, solve, solve_branching, solve_by_components, solve_xp
from .graph import Contraction, LabeledGraph, apply_sequence, contract, degeneracy, graph_equal, max_degree
from .mcc import MccResult, solve_mcc, solve_mcc_branching, solve_mcc_bruteforce, solve_mcc_components
from .witness import WitnessStructure, sequence_to_witness, validate_witness, witness_to_sequence

__all__ = [
    "Contraction",
    "ContractibilityResult",
    "LabeledGraph",
    "MccResult",
    "WitnessStructure",
    "apply_sequence",
    "contract",
    "degeneracy",
    "graph_equal",
    "max_degree",
    "sequence_to_witness",
    "solve",
    "solve_branching",
    "solve_by_components",
    "solve_mcc",
    "solve_mcc_branching",
    "solve_mcc_bruteforce",
    "solve_mcc_components",
    "solve_xp",
    "validate_witness",
    "witness_to_sequence",
]
