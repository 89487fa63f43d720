"""Exact verification engine for intersection extremal problems on matchings
of complete k-partite k-graphs: universe enumeration, intersection predicates,
extremal constructions, exact maximum-clique search, and theorem/conjecture
verification campaigns."""

__version__ = "0.1.0"

from .counts import (
    ak_family_size,
    count_matchings,
    falling,
    fixed_point_family_size,
    frame_index_threshold,
    katona_bound,
    katona_sizes,
    semi_star_size,
    t_set_star_size,
    t_star_size,
)
from .matchings import (
    DEFAULT_UNIVERSE_CAP,
    Family,
    Universe,
    UniverseTooLargeError,
    canonical_matching,
    drop_part,
    enumerate_union_universe,
    enumerate_universe,
    project_all,
    project_pair,
    reduction_classes,
    restrict_family,
    vertex_shadow,
)
from .predicates import (
    Predicate,
    classify_star,
    cross_set_intersecting,
    family_satisfies,
    intersects_t,
    set_intersects_t,
    weakly_intersects_t,
    weakly_set_intersects_t,
)
from .search import (
    CompatGraph,
    ExtremalReport,
    MaximaOverflowError,
    NodeBudgetExceeded,
    all_max_cliques,
    build_compat_graph,
    extremal,
    max_clique,
    max_clique_naive,
)
