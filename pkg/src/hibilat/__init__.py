"""Distributive lattices, their Hibi ideals and smoothness at coordinate points."""

from .classify import (
    decompose_chain_product,
    is_honest,
    is_square_lattice,
    is_tree_lattice,
    prune,
    verify_bijection_lemma,
    verify_lemma_chain,
    verify_lemma_greater,
    verify_lemma_inequality,
)
from .diamonds import (
    enumerate_diamonds,
    ideal_generators,
    partner_count_all,
    partner_set,
)
from .errors import *  # noqa: F401,F403
from .formats import example_lattice, example_raw_lattice, load_ji, load_raw
from .harness import FamilySpec, generate_family, run_campaign
from .lattice import (
    Lattice,
    birkhoff,
    chain,
    chain_product,
    codim,
    dual,
    from_ji_spec,
    from_raw,
    ji_count_paper,
    join,
    meet,
    product,
)
from .polytope import order_polytope, polytope_edges, toric_smooth_all_vertices, vertex_cone_report
from .poset import OrderIdeal, Poset, PosetSpec, enumerate_order_ideals, validate_poset
from .smooth import (
    is_smooth_at,
    rank_at,
    smoothness_report,
    verify_theorem_a,
    verify_theorem_b,
    verify_theorem_c,
)

__version__ = "0.1.0"
