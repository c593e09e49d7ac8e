"""Audit and bias-analysis queries over snapshots.

Pure functions: untouched-control detection, usage-frequency ranking, the
co-interaction pair matrix, and the full audit report.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .core import (
    EventKind,
    InteractionEvent,
    NumericRecord,
    ProvenanceSnapshot,
    RangedRecord,
    SelectionRecord,
    WidgetKind,
    WidgetValue,
)
from .errors import InvalidWindow


def untouched_widgets(snapshot: ProvenanceSnapshot) -> List[str]:
    """Ids of widgets with no interactions, in registration order."""
    return [d.id for d in snapshot.widgets if snapshot.per_widget[d.id].count == 0]


def usage_ranking(snapshot: ProvenanceSnapshot) -> List[Tuple[str, int]]:
    """(widget id, count) pairs sorted count-descending, ties by registration."""
    ranked = [(d.id, snapshot.per_widget[d.id].count) for d in snapshot.widgets]
    ranked.sort(key=lambda pair: -pair[1])  # stable: registration order breaks ties
    return ranked


@dataclass(frozen=True)
class CoInteractionMatrix:
    """Symmetric counts over unordered widget pairs within a k-event window."""

    window_k: int
    counts: Mapping[Tuple[str, str], int]

    def count(self, a: str, b: str) -> int:
        return self.counts.get(_pair_key(a, b), 0)

    def pairs(self) -> List[Tuple[str, str, int]]:
        return [(a, b, n) for (a, b), n in sorted(self.counts.items())]


def _pair_key(a: str, b: str) -> Tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def co_interaction(snapshot: ProvenanceSnapshot, window_k: int) -> CoInteractionMatrix:
    """Count distinct-widget pairs at most ``window_k`` interactions apart.

    Restore meta-events are skipped and consume no window positions.
    """
    if window_k < 1:
        raise InvalidWindow(window_k)
    interactions = [e for e in snapshot.events if e.kind is EventKind.INTERACTION]
    counts: Dict[Tuple[str, str], int] = {}
    for i, first in enumerate(interactions):
        for second in interactions[i + 1 : i + 1 + window_k]:
            if first.widget_id == second.widget_id:
                continue
            key = _pair_key(first.widget_id, second.widget_id)  # type: ignore[arg-type]
            counts[key] = counts.get(key, 0) + 1
    return CoInteractionMatrix(window_k=window_k, counts=counts)


@dataclass(frozen=True)
class WidgetAudit:
    id: str
    kind: WidgetKind
    count: int
    first_wall_time: Optional[int]
    last_wall_time: Optional[int]
    last_value: Optional[WidgetValue]
    record_summary: Mapping[str, object]


@dataclass(frozen=True)
class AuditReport:
    global_count: int
    started_at: Optional[int]
    ended_at: Optional[int]
    widgets: Tuple[WidgetAudit, ...]
    events: Tuple[InteractionEvent, ...]


def record_summary(record) -> Dict[str, object]:
    """Kind-specific statistics in a JSON-friendly shape."""
    if isinstance(record, NumericRecord):
        return {
            "observed_min": record.observed_min,
            "observed_max": record.observed_max,
        }
    if isinstance(record, RangedRecord):
        return {
            "pair_counts": [
                [low, high, count]
                for (low, high), count in sorted(record.pair_counts.items())
            ],
            "domain_low": record.domain_low,
            "domain_high": record.domain_high,
        }
    if isinstance(record, SelectionRecord):
        return {
            "selection_counts": dict(record.selection_counts),
            "interaction_counts": dict(record.interaction_counts),
        }
    return {}


def audit_report(snapshot: ProvenanceSnapshot) -> AuditReport:
    """Deterministic session audit: per-widget usage plus the full event listing."""
    widgets = []
    for d in snapshot.widgets:
        stats = snapshot.per_widget[d.id]
        events = stats.record.events
        widgets.append(
            WidgetAudit(
                id=d.id,
                kind=d.kind,
                count=stats.count,
                first_wall_time=events[0].wall_time if events else None,
                last_wall_time=stats.last_wall_time,
                last_value=events[-1].value if events else None,
                record_summary=record_summary(stats.record),
            )
        )
    return AuditReport(
        global_count=snapshot.global_count,
        started_at=snapshot.events[0].wall_time if snapshot.events else None,
        ended_at=snapshot.events[-1].wall_time if snapshot.events else None,
        widgets=tuple(widgets),
        events=snapshot.events,
    )
