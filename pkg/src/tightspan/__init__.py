"""Exact computation of tight-span dimensions via fractional matchings."""

__version__ = "0.1.0"

from .core import (
    FractionalMatching,
    Metric,
    Subgraph,
    Weights,
    classify_components,
    has_nontrivial_even_tour,
    is_spanning,
    is_star,
    matching_weights,
    validate_metric,
)
from .errors import NonGenericDetected
from .subdivision import (
    enumerate_maximal_cells,
    is_cell,
    is_generic,
    tight_span_dimension,
)

__all__ = [
    "FractionalMatching",
    "Metric",
    "NonGenericDetected",
    "Subgraph",
    "Weights",
    "classify_components",
    "enumerate_maximal_cells",
    "has_nontrivial_even_tour",
    "is_cell",
    "is_generic",
    "is_spanning",
    "is_star",
    "matching_weights",
    "tight_span_dimension",
    "validate_metric",
]
