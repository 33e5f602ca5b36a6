"""
Command Line Interface
beta, curve, samples, validate, branching, dmax and protocol subcommands
"""

from .commands import cli, curve_frame
from .formatting import atomic_write_text, check_writable, format_decimal, format_exact

__all__ = [
    "cli",
    "curve_frame",
    "atomic_write_text",
    "check_writable",
    "format_decimal",
    "format_exact",
]
