"""Exact dedicated path protection solver for elastic optical networks.

Finds two link-disjoint routes of minimal total cost on which a demanded
number of contiguous frequency-slot units is available on every link of
each route, plus the supporting cast: a brute-force oracle, worst-case and
random instance generators, and a dynamic-traffic simulation harness.
"""

from .net_model import (
    Demand,
    Link,
    Network,
    NetworkError,
    dump_demand,
    dump_network,
    incident_links,
    load_demand,
    load_network,
    lobe_network,
    random_network,
)
from .oracle import (
    BudgetExceeded,
    CompareReport,
    OracleResult,
    RoutePair,
    compare,
    oracle_solve,
    route_intervals,
)
from .search import (
    EfficientSet,
    PairSearch,
    RouteLeg,
    SearchOptions,
    SearchStats,
    Solution,
    reconstruct,
    solve,
)
from .spectrum_core import (
    ADDITIVE,
    AdditiveCost,
    CostModel,
    Label,
    ModulationCost,
    Trait,
    UnitInterval,
    Vertex,
    dominates,
    label_cost,
    label_extend,
    leq_eq,
    leq_n,
    leq_ne,
    leq_prime,
    leq_x,
    normalize_intervals,
    ri_incl_eq,
    ri_incl_n,
    ri_incl_ne,
    ri_incl_x,
    trait_extend,
    trait_leq,
)
from .traffic import SimReport, TrafficEvent, dump_traffic, gen_traffic, load_traffic, run

__version__ = "0.1.0"

__all__ = [
    "ADDITIVE",
    "AdditiveCost",
    "BudgetExceeded",
    "CompareReport",
    "CostModel",
    "Demand",
    "EfficientSet",
    "Label",
    "Link",
    "ModulationCost",
    "Network",
    "NetworkError",
    "OracleResult",
    "PairSearch",
    "RouteLeg",
    "RoutePair",
    "SearchOptions",
    "SearchStats",
    "SimReport",
    "Solution",
    "Trait",
    "TrafficEvent",
    "UnitInterval",
    "Vertex",
    "compare",
    "dominates",
    "dump_demand",
    "dump_network",
    "dump_traffic",
    "gen_traffic",
    "incident_links",
    "label_cost",
    "label_extend",
    "leq_eq",
    "leq_n",
    "leq_ne",
    "leq_prime",
    "leq_x",
    "load_demand",
    "load_network",
    "load_traffic",
    "lobe_network",
    "normalize_intervals",
    "oracle_solve",
    "random_network",
    "reconstruct",
    "ri_incl_eq",
    "ri_incl_n",
    "ri_incl_ne",
    "ri_incl_x",
    "route_intervals",
    "run",
    "solve",
    "trait_extend",
    "trait_leq",
]
