"""Intersection lattices, building sets and nested sets of (r-)braid arrangements."""
from wonderbraid.arrangement import (
    Arrangement,
    Hyperplane,
    braid_arrangement,
    parse_arrangement,
    r_braid_arrangement,
)
from wonderbraid.building import (
    BuildingSet,
    blowup_schedule,
    enumerate_nested_sets,
    explicit_rbraid_building_set,
    is_building_set,
    is_decomposable,
    is_nested,
    maximal_building_set,
    minimal_building_set,
)
from wonderbraid.cyclotomic import CycNum, cyclotomic_polynomial, zeta_pow
from wonderbraid.graphs import RnGraph, enumerate_rn_graphs, flat_of_graph, graph_of_flat, validate_rn_graph
from wonderbraid.kernels import BACKEND
from wonderbraid.lattice import (
    IntersectionLattice,
    characteristic_polynomial,
    complement_count_mod_q,
    intersection_lattice,
    mobius,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BACKEND",
    "BuildingSet",
    "CycNum",
    "Hyperplane",
    "IntersectionLattice",
    "RnGraph",
    "blowup_schedule",
    "braid_arrangement",
    "characteristic_polynomial",
    "complement_count_mod_q",
    "cyclotomic_polynomial",
    "enumerate_nested_sets",
    "enumerate_rn_graphs",
    "explicit_rbraid_building_set",
    "flat_of_graph",
    "graph_of_flat",
    "intersection_lattice",
    "is_building_set",
    "is_decomposable",
    "is_nested",
    "maximal_building_set",
    "minimal_building_set",
    "mobius",
    "parse_arrangement",
    "r_braid_arrangement",
    "validate_rn_graph",
    "zeta_pow",
]
