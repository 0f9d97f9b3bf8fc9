"""Red/blue colorings of complete graphs avoiding a red fan (or matching) and a blue clique."""

from .graph_model import (
    BLUE,
    RED,
    Clique,
    Color,
    ColoredGraph,
    Fan,
    Matching,
    StarColoredGraph,
    Target,
    TargetPair,
    color_of,
    degree_profile,
    parse,
    serialize,
)
from .detectors import (
    Witness,
    clique_number,
    find_clique,
    find_fan,
    find_matching,
    is_bipartite,
    is_free,
    shortest_odd_cycle,
)
from .constructions import (
    G2Spec,
    build_fan_k3_critical,
    build_g1,
    build_g2,
    build_lower_bound,
    build_matching_critical,
    random_g2_spec,
)

__version__ = "0.1.0"
