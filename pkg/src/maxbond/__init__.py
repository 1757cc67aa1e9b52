"""Exact maximum-bond solving and bond polytope tooling.

Core pieces: immutable graphs with small named families (graphs), a
brute-force cut/bond oracle (oracle), SPR-tree decomposition (spqr), the
decomposition-based solver with a linear-time wheel core (solver), exact
polyhedral computations for bond polytopes (polytope), text/JSON formats
(fileio) and a CLI (cli).
"""

__version__ = "1.0.0"

from .errors import MaxBondError
from .graphs import Graph, build_graph, generate, fixture
from .oracle import enumerate_bonds, max_bond_oracle
from .polytope import LinearInequality, check_inequality, facet_enumeration
from .solver import k5e_max_bond, max_bond, wheel_max_bond
from .spqr import spr_tree, validate

__all__ = [
    "MaxBondError",
    "Graph",
    "build_graph",
    "generate",
    "fixture",
    "enumerate_bonds",
    "max_bond_oracle",
    "LinearInequality",
    "check_inequality",
    "facet_enumeration",
    "max_bond",
    "k5e_max_bond",
    "wheel_max_bond",
    "spr_tree",
    "validate",
    "__version__",
]
