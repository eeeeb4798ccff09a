"""Randomized one-shot regularization of colored r-partite graphs."""

from .graph import (ColoredGraph, Complex, GraphError, PartitionwiseMap, TotalColor,
                    WorkCapExceeded, random_partitionwise_map, total_color, validate_complex,
                    validate_graph)
from .regularize import regularize, regularize_with_signatures, signature, vertex_palette_bound
from .schedule import PracticalSchedule, ScheduleOverflow, TheoreticalSchedule, epsilon1
from .statistics import (SamplingPlan, delta_table, density_table, embed_probability, eta,
                         regularity_report)

__all__ = [
    "ColoredGraph", "Complex", "GraphError", "PartitionwiseMap", "TotalColor", "WorkCapExceeded",
    "random_partitionwise_map", "total_color", "validate_complex", "validate_graph",
    "regularize", "regularize_with_signatures", "signature", "vertex_palette_bound",
    "PracticalSchedule", "ScheduleOverflow", "TheoreticalSchedule", "epsilon1",
    "SamplingPlan", "delta_table", "density_table", "embed_probability", "eta",
    "regularity_report",
]
