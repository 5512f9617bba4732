"""Edge k-general position sets, edge geodesic covers and partitions.

The checker decides, for any edge set ``S``, the largest number of ``S``-edges
on one geodesic; the solvers compute exact optima on small graphs; the
constructions build certified witnesses for cycles, tori, hypercubes and Benes
networks.
"""

from .checker import (
    check_matching_diameter_equivalence,
    edge_spread_sufficient,
    geodesic_interval_dag,
    is_edge_kgp,
    is_geodesic_cover,
    is_geodesic_partition,
    is_matching,
    max_marked_on_common_geodesic,
    path_spacing_sufficient,
    scan_common_geodesic,
)
from .errors import BudgetExceededError, CertificationError, DisconnectedGraphError, GeoposError, InvalidInputError
from .families import FamilySpec, generate, parse_spec
from .graph import GeodesicPath, Graph, all_pairs_distances, diameter, edge_distance, is_geodesic, parse_edge_list, read_edge_list, write_edge_list
from .solvers import duality_certify, enumerate_geodesics, gcover_exact, gpart_exact, kgp_exact
from .theta import is_partial_cube, theta_classes, theta_related, theta_union_kgp

__version__ = "0.1.0"
