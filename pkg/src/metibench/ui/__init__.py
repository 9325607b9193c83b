"""
Console rendering for metibench.
"""

from .console import (
    comparison_table,
    console,
    format_size,
    format_time,
    print_diagnostics,
    print_result_block,
    print_summary,
)

__all__ = [
    "comparison_table",
    "console",
    "format_size",
    "format_time",
    "print_diagnostics",
    "print_result_block",
    "print_summary",
]
