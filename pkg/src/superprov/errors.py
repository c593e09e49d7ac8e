"""Exception types raised by the provenance engine."""
from __future__ import annotations

from typing import Optional


class ProvenanceError(Exception):
    """Base class for all engine errors."""


class DuplicateWidgetId(ProvenanceError):
    def __init__(self, widget_id: str):
        super().__init__(f"widget id already registered: {widget_id!r}")
        self.widget_id = widget_id


class UnknownWidgetId(ProvenanceError):
    def __init__(self, widget_id: str):
        super().__init__(f"unknown widget id: {widget_id!r}")
        self.widget_id = widget_id


class InvalidValue(ProvenanceError):
    """A value does not satisfy the widget's kind/domain constraints."""


class InvalidInitialValue(ProvenanceError):
    """A descriptor's initial value (or its domain) is inconsistent with the kind."""


class SeqOutOfRange(ProvenanceError):
    def __init__(self, seq: int, log_length: int):
        super().__init__(f"seq {seq} out of range for log of length {log_length}")
        self.seq = seq
        self.log_length = log_length


class MalformedLog(ProvenanceError):
    """A raw event list violates the event-log invariants.

    ``seq`` is the sequence number of the offending event, or None when the
    problem precedes the events (e.g. a bad descriptor list).
    """

    def __init__(self, message: str, seq: Optional[int] = None):
        super().__init__(message if seq is None else f"{message} (at seq {seq})")
        self.seq = seq


class ParseError(ProvenanceError):
    """Input bytes are not syntactically valid."""

    def __init__(self, message: str, offset: Optional[int] = None):
        super().__init__(message if offset is None else f"{message} (at offset {offset})")
        self.offset = offset


class SchemaError(ProvenanceError):
    """Input parsed but violates the document schema; ``path`` locates the violation."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{message} (at {path})")
        self.path = path


class InvalidViewport(ProvenanceError):
    """Aggregate layout viewport has a non-positive dimension."""


class UnknownKey(ProvenanceError):
    def __init__(self, key: str):
        super().__init__(f"bar key not in position domain: {key!r}")
        self.key = key


class InvalidWindow(ProvenanceError):
    def __init__(self, window_k: int):
        super().__init__(f"co-interaction window must be >= 1, got {window_k}")
        self.window_k = window_k


class InvalidConfig(ProvenanceError):
    """Session configuration violates its invariants."""


class ReentrancyError(ProvenanceError):
    """A mutation was attempted from inside an observer callback."""
