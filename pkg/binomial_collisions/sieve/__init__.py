"""Modular sieve exports."""
from .checkpoint import CheckpointStore
from .engine import (
    SievePlan,
    SieveResult,
    SieveState,
    apply_prime,
    bad_residues,
    l_max_for_bound,
    max_m_for_bound,
    new_state,
    relevant_pairs,
    sieve_all,
    sieve_pair,
)
from .image import ImageStats, binomial_residues, closed_form_A, density_limit, has_closed_form, image_mod_p

__all__ = [
    "CheckpointStore",
    "ImageStats",
    "SievePlan",
    "SieveResult",
    "SieveState",
    "apply_prime",
    "bad_residues",
    "binomial_residues",
    "closed_form_A",
    "density_limit",
    "has_closed_form",
    "image_mod_p",
    "l_max_for_bound",
    "max_m_for_bound",
    "new_state",
    "relevant_pairs",
    "sieve_all",
    "sieve_pair",
]
