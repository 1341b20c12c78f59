"""Known collisions, the Fibonacci family and the near-collision identities."""
from .catalog import (
    CATALOG,
    DOUBLE_COLLISION,
    NEAR_COLLISIONS_D1,
    SPORADIC_COLLISIONS,
    CatalogEntry,
    CatalogKind,
    check_entry,
    verify_catalog,
)
from .fibonacci import FibonacciFamilyMember, FibonacciReport, fibonacci, fibonacci_member, verify_fibonacci
from .identities import (
    FAMILIES,
    IdentityEvaluation,
    IdentityFamily,
    IdentityReport,
    identity_eval,
    identity_quality,
    quality_exponent,
    verify_identity,
)

__all__ = [
    "CATALOG",
    "CatalogEntry",
    "CatalogKind",
    "DOUBLE_COLLISION",
    "FAMILIES",
    "FibonacciFamilyMember",
    "FibonacciReport",
    "IdentityEvaluation",
    "IdentityFamily",
    "IdentityReport",
    "NEAR_COLLISIONS_D1",
    "SPORADIC_COLLISIONS",
    "check_entry",
    "fibonacci",
    "fibonacci_member",
    "identity_eval",
    "identity_quality",
    "quality_exponent",
    "verify_catalog",
    "verify_fibonacci",
    "verify_identity",
]
