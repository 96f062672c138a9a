"""Degree distribution quantification and comparison (DDQC).

Quantify a network's degree distribution into a fixed-length vector of
interval probabilities around the mean, compare distributions across
granularities, and benchmark the result against KS, power-law and
percentile baselines on labeled corpora.
"""
from .core import (
    QuantizationParams,
    QuantifiedDistribution,
    coarsen,
    ddqc_distance,
    idp,
    interval_points,
    quantify,
    region_bounds,
)
from .degree_stats import DegreeDistribution, cdf, from_degree_sequence, from_graph
from .graph_io import Graph, degree_sequence, load_edge_list, read_edge_list, write_edge_list

__all__ = [
    "DegreeDistribution",
    "Graph",
    "QuantifiedDistribution",
    "QuantizationParams",
    "cdf",
    "coarsen",
    "ddqc_distance",
    "degree_sequence",
    "from_degree_sequence",
    "from_graph",
    "idp",
    "interval_points",
    "load_edge_list",
    "quantify",
    "read_edge_list",
    "region_bounds",
    "write_edge_list",
]
