"""Configuration constants for the binomial collision toolkit."""
from __future__ import annotations

import logging
import sys

# Approximate arithmetic.
DEFAULT_PRECISION_BITS = 128
MIN_PRECISION_BITS = 8

# Search tuning.
DEFAULT_NEAR_EXPONENT = 3
DEFAULT_PRIME_BOUND = 500
DEFAULT_DECIMAL_DIGITS = 16

# Checkpoint handling.
CHECKPOINT_VERSION = 1

# Output.
CSV_COLUMNS = ("type", "n", "k", "m", "l", "d", "value")
# Trailing csv column; compact JSON of the record extras, empty when there are none.
CSV_EXTRAS_COLUMN = "extras"
RECORD_TYPES = ("collision", "near", "survivor", "stat", "verify")

# Exit codes.
EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: int = logging.INFO) -> None:
    """Send log lines to stderr; records never go through logging."""
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT, force=True)


__all__ = [
    "DEFAULT_PRECISION_BITS",
    "MIN_PRECISION_BITS",
    "DEFAULT_NEAR_EXPONENT",
    "DEFAULT_PRIME_BOUND",
    "DEFAULT_DECIMAL_DIGITS",
    "CHECKPOINT_VERSION",
    "CSV_COLUMNS",
    "CSV_EXTRAS_COLUMN",
    "RECORD_TYPES",
    "EXIT_OK",
    "EXIT_RUNTIME",
    "EXIT_USAGE",
    "EXIT_VERIFY",
    "LOG_FORMAT",
    "configure_logging",
]
