from .entries import JournalEntry, derive_statuses, entry_ref, parse_ref, revised_ids
from .ledger import Journal, StatusReport, journal_status

__all__ = [
    "Journal",
    "JournalEntry",
    "StatusReport",
    "derive_statuses",
    "entry_ref",
    "journal_status",
    "parse_ref",
    "revised_ids",
]
