"""Exact graph-counting polynomials for oriented graphs and their zero locations."""

from .asano import AScheme, contract_graph, specialize, vertex_factor
from .cyclotomic import Cyc8
from .graph import (
    DoubledGraph,
    GraphError,
    NotBipartite,
    OrientedGraph,
    UndirectedGraph,
    check_bipartite,
    deg2,
    double,
    parse_graph,
    random_graph,
)
from .multiaffine import MultiAffinePoly, asano_contract, multiply
from .poly import IntPoly
from .roots import (
    certify_deg2_bound,
    certify_purely_imaginary,
    certify_real_negative,
    check_halfplane_negative,
    numeric_roots,
    sturm_count,
    to_int_poly,
)
from .subgraphs import (
    closed_form_oriented_unbranched,
    closed_form_oriented_unbranched_even,
    decompose,
    enum_family,
    multivar_P,
    pairing_check,
    poly_family,
    poly_undirected_unbranched,
    poly_v0,
)

__version__ = "0.1.0"
