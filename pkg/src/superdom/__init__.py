"""Super dominating sets: exact solvers, the tree algorithm, subdivision
formulas and two hardness reductions."""

from .graph import Graph, parse_graph, subdivide
from .superdom import gamma_sp_exact, verify_super_dom
from .tree import tree_gamma_sp_set
from .subdivision import build_superdom_set_subdivision, gamma_sp_subdivision_value

__all__ = [
    "Graph",
    "parse_graph",
    "subdivide",
    "gamma_sp_exact",
    "verify_super_dom",
    "tree_gamma_sp_set",
    "gamma_sp_subdivision_value",
    "build_superdom_set_subdivision",
]
__version__ = "0.1.0"
