from .lock import writer_lock
from .results import (
    BadLine,
    ResultStore,
    append_lines,
    Session,
    comparison_guard,
    content_hash,
    new_session_id,
    read_records,
)

__all__ = [
    "BadLine",
    "ResultStore",
    "append_lines",
    "Session",
    "comparison_guard",
    "content_hash",
    "new_session_id",
    "read_records",
    "writer_lock",
]
