"""Certifying recognition of graphs with path-width at most two."""

from .errors import CapacityError, DomainError, ParseError, PathwidthError, SoundnessError
from .graph_core import Graph, canonical_code, components, contract_edge, format_graph, parse_graph, subgraph
from .oracle import PathDecomposition, exact_pathwidth, verify_decomposition
from .structure import Certificate, decide, format_certificate, recognize_pw2
from .track import TrackRepresentation, recognize_track

__all__ = [
    "CapacityError", "Certificate", "DomainError", "Graph", "ParseError", "PathDecomposition", "PathwidthError",
    "SoundnessError", "TrackRepresentation", "canonical_code", "components", "contract_edge", "decide",
    "exact_pathwidth", "format_certificate", "format_graph", "parse_graph", "recognize_pw2", "recognize_track",
    "subgraph", "verify_decomposition",
]
__version__ = "0.1.0"
