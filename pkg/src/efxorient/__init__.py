"""EFX orientations of graphical fair-division instances."""
from .characterize import (
    Classification01,
    check_01_characterization,
    matching_condition,
    orient_01,
    orient_bipartite,
    orient_near_bipartite,
    peel_degree_one,
)
from .classify import StrongClassification, classify_strong
from .counterexamples import CertifiedInstance, generate, replay
from .graph import Graph, GraphError, SizeBoundError
from .search import check_counterexample, exists_efx_for_all_01, find_efx_orientation
from .valuations import AdditiveValuation, MonotoneTableValuation, ZeroOneValuation, validate
from .verify import Orientation, verify_efx, verify_efx_fast

__version__ = "0.1.0"

__all__ = [
    "AdditiveValuation",
    "CertifiedInstance",
    "Classification01",
    "Graph",
    "GraphError",
    "MonotoneTableValuation",
    "Orientation",
    "SizeBoundError",
    "StrongClassification",
    "ZeroOneValuation",
    "check_01_characterization",
    "check_counterexample",
    "classify_strong",
    "exists_efx_for_all_01",
    "find_efx_orientation",
    "generate",
    "matching_condition",
    "orient_01",
    "orient_bipartite",
    "orient_near_bipartite",
    "peel_degree_one",
    "replay",
    "validate",
    "verify_efx",
    "verify_efx_fast",
]
