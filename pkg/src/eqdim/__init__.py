"""Equidistant dimension toolkit.

Compute the minimum distance-equalizer set of a connected graph exactly,
generate Johnson and Kneser graphs with closed-form distance oracles,
verify the known optimal constructions as certificates, and bound the
invariant from both sides.
"""

__version__ = "0.1.0"

from .bounds import (BoundReport, compute_bounds, degree_shortcut,
                     extremal_family_shortcut, forced_matching_lb, greedy_ub,
                     support_vertex_lb)
from .constructions import (ConstructionReport, NamedConstruction,
                            halved_partition_set, johnson2_set, johnson3_set,
                            kneser2_set, parse_construction_spec,
                            verify_construction)
from .equalizer import (Certificate, EqualizerInstance, build_instance,
                        equidistant_set, hitting_equivalence_check,
                        is_distance_equalizer)
from .families import (KSubset, SubsetIndex, complement_distance_check,
                       johnson, johnson_distance, kneser, kneser2_distance,
                       named_family, parse_family_spec)
from .graph import (DisconnectedGraphError, DistanceMatrix, Graph, UNREACHED,
                    VertexSet, all_pairs_distances, component_count,
                    degree_stats, diameter, from_edge_list, is_connected,
                    load_graph)
from .solver import (SolveOptions, SolveReport, available_kernels, kernel_name,
                     random_connected_graph, solve_bruteforce, solve_exact,
                     solve_graph)

__all__ = [
    "BoundReport", "Certificate", "ConstructionReport", "DisconnectedGraphError",
    "DistanceMatrix", "EqualizerInstance", "Graph", "KSubset",
    "NamedConstruction", "SolveOptions", "SolveReport", "SubsetIndex",
    "UNREACHED", "VertexSet", "all_pairs_distances", "available_kernels",
    "build_instance", "complement_distance_check", "component_count",
    "compute_bounds", "degree_shortcut", "degree_stats", "diameter",
    "equidistant_set", "extremal_family_shortcut", "forced_matching_lb",
    "from_edge_list", "greedy_ub", "halved_partition_set",
    "hitting_equivalence_check", "is_connected", "is_distance_equalizer",
    "johnson", "johnson2_set", "johnson3_set", "johnson_distance", "kernel_name",
    "kneser", "kneser2_distance", "kneser2_set", "load_graph", "named_family",
    "parse_construction_spec", "parse_family_spec", "random_connected_graph",
    "solve_bruteforce", "solve_exact", "solve_graph", "support_vertex_lb",
    "verify_construction",
]
