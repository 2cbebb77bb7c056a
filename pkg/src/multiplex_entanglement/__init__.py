"""Layer entanglement, homogeneity and intensity for multiplex networks."""

__version__ = "0.1.0"

from ._accel import backend_name
from .entanglement import (
    ConvergenceError,
    EntanglementResult,
    LayerInteractionNetwork,
    OverlapMatrix,
    analyze,
    build_lin,
    build_overlap_matrix,
    dense_eigen_oracle,
    dominant_eigenpair,
    homogeneity,
    intensity,
    normalized_homogeneity,
)
from .generator import GeneratorConfig, LayerAssignment, assign_layers, generate, theoretical_edge_bound
from .io import EdgeListFormat, NetworkSummary, parse_multiplex_edgelist, summarize, write_multiplex_edgelist
from .network import ComponentDecomposition, MultiplexNetwork, aggregate_graph, connected_components, induce_component
from .sweep import SweepGrid, SweepRecord, run_sweep, trend_stats

__all__ = [
    "ComponentDecomposition",
    "ConvergenceError",
    "EdgeListFormat",
    "EntanglementResult",
    "GeneratorConfig",
    "LayerAssignment",
    "LayerInteractionNetwork",
    "MultiplexNetwork",
    "NetworkSummary",
    "OverlapMatrix",
    "SweepGrid",
    "SweepRecord",
    "aggregate_graph",
    "analyze",
    "assign_layers",
    "backend_name",
    "build_lin",
    "build_overlap_matrix",
    "connected_components",
    "dense_eigen_oracle",
    "dominant_eigenpair",
    "generate",
    "homogeneity",
    "induce_component",
    "intensity",
    "normalized_homogeneity",
    "parse_multiplex_edgelist",
    "run_sweep",
    "summarize",
    "theoretical_edge_bound",
    "trend_stats",
    "write_multiplex_edgelist",
]
