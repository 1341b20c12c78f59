"""Command-line front end."""
from .commands import build_parser, main
from .output import OutputRecord, RecordWriter

__all__ = ["OutputRecord", "RecordWriter", "build_parser", "main"]
