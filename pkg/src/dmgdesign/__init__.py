"""Experiment design for learning directed mixed graphs from interventions."""
from .graph import (Dmg, SccAncPartition, UGraph, classify_bidirected, component_graph,
                    directed_skeleton, intervene, ra, rb, rd, reachable, scc_anc_partition,
                    scc_decompose)
from .oracle import ExperimentLog, InterventionalOracle
from .pipeline import PipelineConfig, PipelineResult, discover
from .separation import Scenario, has_inducing_path, is_r_separated, observational_graph

__all__ = [
    "Dmg", "UGraph", "SccAncPartition", "Scenario",
    "classify_bidirected", "component_graph", "directed_skeleton", "intervene",
    "ra", "rb", "rd", "reachable", "scc_anc_partition", "scc_decompose",
    "is_r_separated", "has_inducing_path", "observational_graph",
    "InterventionalOracle", "ExperimentLog",
    "PipelineConfig", "PipelineResult", "discover",
]
