"""Binomial collision toolkit package exports."""
from .approx_arith import ExtFloat, Interval, Ordering, binom_interval, ext_from_exact, interval_compare
from .config import *  # noqa: F401,F403
from .config import __all__ as _config_all
from .errors import (
    CheckpointError,
    CheckpointMismatchError,
    CollisionSearchError,
    ConfigurationError,
    ScanInvariantError,
    VerificationError,
)
from .exact_arith import BinomPair, binom_exact, is_binomial
from .scan_engine import CollisionRecord, NearCollisionRecord, ScanConfig, ScanMode, Scanner, classify_pair, scan
from .sieve import CheckpointStore, SievePlan, image_mod_p, sieve_pair

__all__ = [
    *_config_all,
    "BinomPair",
    "CheckpointError",
    "CheckpointMismatchError",
    "CheckpointStore",
    "CollisionRecord",
    "CollisionSearchError",
    "ConfigurationError",
    "ExtFloat",
    "Interval",
    "NearCollisionRecord",
    "Ordering",
    "ScanConfig",
    "ScanInvariantError",
    "ScanMode",
    "Scanner",
    "SievePlan",
    "VerificationError",
    "binom_exact",
    "binom_interval",
    "classify_pair",
    "ext_from_exact",
    "image_mod_p",
    "interval_compare",
    "is_binomial",
    "scan",
    "sieve_pair",
]
