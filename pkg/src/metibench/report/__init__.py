from .claims import ClaimEvidence, ClaimVerdict, evaluate_claim, point_verdict
from .comparison import ComparisonRow, comparison_rows, fastest, render_comparison, render_summary_line
from .document import render_report
from .export import ExportDocument, build_export, export_json, load_export
from .groups import BenchmarkGroup, latest_groups

__all__ = [
    "BenchmarkGroup",
    "ClaimEvidence",
    "ClaimVerdict",
    "ComparisonRow",
    "ExportDocument",
    "build_export",
    "comparison_rows",
    "evaluate_claim",
    "export_json",
    "fastest",
    "latest_groups",
    "load_export",
    "point_verdict",
    "render_comparison",
    "render_report",
    "render_summary_line",
]
