"""Immediate snapshot complexes built from witness structures."""

from isc.counter import RoundCounter, Permutation
from isc.errors import CapExceeded, StructureError
from isc.witness import (
    StructureClass,
    TraceForm,
    WitnessPrestructure,
    canonical_form,
    classify,
    ghost,
    stabilize,
    stabilize_mod,
)
from isc.complex import Complex, build, facets
from isc.enumeration import count_facets, count_facets_2d

__all__ = [
    "CapExceeded",
    "Complex",
    "Permutation",
    "RoundCounter",
    "StructureClass",
    "StructureError",
    "TraceForm",
    "WitnessPrestructure",
    "build",
    "canonical_form",
    "classify",
    "count_facets",
    "count_facets_2d",
    "facets",
    "ghost",
    "stabilize",
    "stabilize_mod",
]

__version__ = "0.1.0"
