"""Light low-degree spanners with small hop diameter over finite metrics."""

from .errors import (AdoptionByParent, DisconnectedInput, DuplicatePoint,
                     EmptyKernel, InvariantViolation, LabelConflict, NotATree,
                     ParseError, SizeLimitExceeded, SpanlabError,
                     SymmetryViolation, TriangleViolation, UnsupportedMetric)
from .metric import (MetricSpace, generate_points, load_metric,
                     parse_generator_spec, save_metric)
from .graph import (HamiltonianPath, SpannerGraph, connected_components,
                    dijkstra_from, hop_bounded_distances,
                    hop_diameter_at_stretch, preorder_path, prim_mst,
                    prim_mst_of_graph, shortest_path_matrix)
from .pathspan import (build_path_spanner, hop_budget, line_spanner,
                       path_spanner_position_edges, tree_depth)
from .backends import (BasicSpanner, BasicStats, CompleteSpanner,
                       GreedySpanner, ThetaGraph, make_backend)
from .hierarchy import (Bag, BagForest, LevelParams, base_edge_set,
                        build_base_edges, build_interval_forest, merge_level)
from .attach import LabeledGraph, Star, StarForest, attach, check_star_forest
from .pipeline import RunConfig, SpannerBundle, run
from .verify import (VerificationReport, run_all, verify_bag_reachability,
                     verify_counters, verify_degree, verify_hop_diameter,
                     verify_lightness, verify_stretch, verify_structure)

__version__ = "0.1.0"
