"""Minimal feedback vertex sets in tournaments: streaming enumeration with
polynomial delay and polynomial space, an exact minimum-FVS solver, the
standard extremal constructions, and an exhaustive small-order lab."""

from .core import (
    Factorization,
    ScoreSequence,
    Tournament,
    TournParseError,
    VertexSet,
    arc_bits,
    banks_winners,
    circular,
    disjoint_sum,
    format_tourn,
    from_arc_bits,
    hamiltonian_path,
    is_acyclic_subset,
    is_maximal_acyclic,
    is_strong,
    landau_feasible,
    pair_order,
    parse_tourn,
    pq,
    random_tournament,
    realize_score_sequence,
    reverse,
    rt5,
    score_sequence,
    st6,
    st7,
    strong_factorization,
    topological_order,
    transitive,
    u_family,
)
from .enumeration import (
    DelayProfile,
    EnumNode,
    TraversalStats,
    brute_force_maximal_acyclic,
    children,
    count_minimal_fvs,
    delay_profile,
    enumerate_maximal_acyclic,
    enumerate_minimal_fvs,
    iter_maximal_acyclic_chains,
    lex_smaller,
    lex_smallest_extension,
    min_fvs,
)
from .bounds import (
    DEFAULT_BETA,
    ExtremalReport,
    ScoreCapCampaign,
    ScoreSequenceDomain,
    SigmaInstance,
    SigmaMaximizationReport,
    check_score_cap,
    exact_max_count,
    exact_min_count_strong,
    g_value,
    run_score_cap_campaign,
    sigma,
    upper_bound_envelope,
    verify_lower_bound_family,
    verify_sigma_maximizes,
)

__version__ = "0.1.0"
