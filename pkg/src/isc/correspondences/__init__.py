"""Alternate encodings of simplices of P(r) and the maps between them."""

from isc.correspondences.chromatic import (
    ChromaticSimplex,
    chromatic_faces,
    chromatic_to_witness,
    witness_to_chromatic,
)
from isc.correspondences.executions import Execution, exec_occurrence, executions
from isc.correspondences.posets import (
    WitnessPoset,
    build_c,
    exec_to_poset,
    poset_ideal,
    poset_to_exec,
    poset_to_witness,
    poset_validate,
    witness_to_poset,
)

__all__ = [
    "ChromaticSimplex",
    "Execution",
    "WitnessPoset",
    "build_c",
    "chromatic_faces",
    "chromatic_to_witness",
    "exec_occurrence",
    "exec_to_poset",
    "executions",
    "poset_ideal",
    "poset_to_exec",
    "poset_to_witness",
    "poset_validate",
    "witness_to_chromatic",
    "witness_to_poset",
]
