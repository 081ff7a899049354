"""Generalized distance matrices of strongly connected digraphs.

``D_alpha(G) = alpha * Diag(Tr) + (1 - alpha) * D(G)``: its Perron root,
extremal digraph families, closed forms, and exhaustive small-n checks.
"""

from .coloring import Coloring, dichromatic_number
from .connectivity import VertexConnectivity, arc_connectivity, vertex_connectivity
from .digraph import (DistanceData, Digraph, add_arc, build_digraph, disjoint_union,
                      distance_data, format_digraph, is_acyclic, is_strongly_connected, join,
                      parse_digraph, read_digraph, write_digraph)
from .enumeration import build_catalog, canonical_key, enumerate_sc
from .errors import (ArcExists, ConvergenceFailure, DAlphaError, EmptyClass, InvalidAlpha,
                     InvalidArc, InvalidParams, NegativeRadicand, NotStronglyConnected,
                     ParseError, SizeCap)
from .families import (FamilySpec, complete_digraph, directed_cycle, k_n_k_m, mu_closed_form,
                       second_min_closed_form, t_partition_digraph, t_star,
                       transitive_tournament)
from .spectrum import (BoundsReport, DAlphaMatrix, SpectralResult, dalpha_matrix,
                       is_distance_regular, mu_alpha, perron, row_sum_bounds)
from .verify import (ClassSelector, ConjectureCell, ExtremalReport, bound_suite,
                     conjecture_sweep, cut_component_check, extremal_scan, monotonicity_check)

__version__ = "0.1.0"
