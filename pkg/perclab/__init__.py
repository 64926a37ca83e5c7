"""
perclab - K_{2,t}-bootstrap percolation toolkit

This package computes exact K_{2,t}-bootstrap closures, builds the
extremal gadget graphs ℋ_t, computes exact maximum subgraph densities,
constructs and verifies non-percolation witnesses, and runs reproducible
Monte Carlo threshold experiments on G(n, p).

Main Components:
- graph: immutable bitset graphs and neighbourhood primitives
- closure: K_{2,t} closure engine, traces and the generic oracle
- structure: shape classification and twin classes of closures
- gadgets: fans 𝒢_r(u; u_1..u_s), ℋ_t and standard constructions
- density: exact densities, η(t), candidate subsets, exponents
- witness: disjoint-family and t = 4 component witnesses
- experiments: coupled sampling, percolation probability, p_c, fits
- io / export: edge-list input, JSON and CSV output
- cli: command-line interface

Example:
    >>> from perclab import build_Ht, close_k2t, find_complete_bipartite
    >>> closure, _ = close_k2t(build_Ht(4).graph, 4)
    >>> find_complete_bipartite(closure, 3, 3) is not None
    True
"""

__version__ = "0.1.0"

from perclab.closure import ClosureStep, ClosureTrace, addable_edges, close_generic, close_k2t, percolates, replay_trace
from perclab.density import (
    DensityReport,
    bracket_exponents,
    containment_threshold_exponent,
    density,
    eta,
    max_density,
    max_density_bruteforce,
    max_density_flow,
    seven_candidate_densities,
)
from perclab.errors import (
    BracketError,
    DomainError,
    EdgeListError,
    FactViolation,
    GraphError,
    PerclabError,
    UsageError,
)
from perclab.gadgets import (
    LabeledGadget,
    build_complete,
    build_complete_bipartite,
    build_complete_split,
    build_fan,
    build_Ht,
    build_remark_gadget,
)
from perclab.graph import (
    Graph,
    common_neighbor_count,
    find_complete_bipartite,
    from_edges,
    induced_subgraph,
    is_bipartite,
    is_connected,
)
from perclab.io import format_edge_list, parse_edge_list, read_edge_list
from perclab.structure import StructureClass, classify_structure, equivalence_classes
