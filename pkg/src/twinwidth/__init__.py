"""Twin-width toolkit: trigraphs and contraction sequences, the matrix grid-minor
pipeline, witness constructors for graph classes and first-order model checking."""

from .config import CapExceeded
from .structures import BinaryStructure, as_structure
from .trigraph import (
    ContractionSequence,
    PartitionView,
    Trigraph,
    complement,
    contract,
    homogeneous,
    induced_subtrigraph,
    red_degree,
    verify_sequence,
)
from .search import exact_twinwidth, greedy_sequence
from .fo.dp import ModelChecker, interpret, model_check
from .fo.formula import brute_force_check, parse_formula, to_prenex

__version__ = "0.1.0"

__all__ = [
    "BinaryStructure",
    "CapExceeded",
    "ContractionSequence",
    "ModelChecker",
    "PartitionView",
    "Trigraph",
    "as_structure",
    "brute_force_check",
    "complement",
    "contract",
    "exact_twinwidth",
    "greedy_sequence",
    "homogeneous",
    "induced_subtrigraph",
    "interpret",
    "model_check",
    "parse_formula",
    "red_degree",
    "to_prenex",
    "verify_sequence",
]
