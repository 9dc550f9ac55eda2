"""Coherence repair and aggregation of credence functions.

Thin re-export of the compiled core. Credences are plain lists of floats in
[0, 1]; agendas are binary truth tables with one row per proposition and one
column per possible world.
"""

from ._core import (
    Agenda,
    BregmanGenerator,
    CredalError,
    Profile,
    agg_d1,
    agg_d2,
    bregman,
    certify,
    claim_ids,
    dictator_select,
    emit_profile_json,
    fix_d1,
    fix_d2,
    fix_gkl,
    fix_sed,
    geometric_pool,
    geometric_pool_unnormalized,
    gkl,
    is_coherent,
    linear_pool,
    load_profile,
    omniscient,
    phi_prime_inverse,
    project_coherent_general,
    random_profile,
    run_overlap_study,
    sed,
    wcap_d1,
    wcap_d2,
    wcap_general,
)

__all__ = [
    "Agenda",
    "BregmanGenerator",
    "CredalError",
    "Profile",
    "agg_d1",
    "agg_d2",
    "bregman",
    "certify",
    "claim_ids",
    "dictator_select",
    "emit_profile_json",
    "fix_d1",
    "fix_d2",
    "fix_gkl",
    "fix_sed",
    "geometric_pool",
    "geometric_pool_unnormalized",
    "gkl",
    "is_coherent",
    "linear_pool",
    "load_profile",
    "omniscient",
    "phi_prime_inverse",
    "project_coherent_general",
    "random_profile",
    "run_overlap_study",
    "sed",
    "wcap_d1",
    "wcap_d2",
    "wcap_general",
]
