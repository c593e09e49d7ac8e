"""Independent brute-force oracles used to check engine statistics.

Everything here recomputes from the raw event list in the most literal way
possible and deliberately shares no code with the engine's incremental or
swept implementations.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from superprov.core import (
    EventKind,
    InteractionEvent,
    WidgetDescriptor,
    WidgetValue,
)


def interaction_events_of(
    events: Sequence[InteractionEvent], widget_id: str
) -> List[InteractionEvent]:
    return [
        e
        for e in events
        if e.kind is EventKind.INTERACTION and e.widget_id == widget_id
    ]


def brute_numeric_minmax(
    events: Sequence[InteractionEvent], widget_id: str
) -> Tuple[float, float] | Tuple[None, None]:
    values = [e.value.value for e in interaction_events_of(events, widget_id)]
    if not values:
        return (None, None)
    lo = hi = values[0]
    for v in values[1:]:
        if v < lo:
            lo = v
        if v > hi:
            hi = v
    return (lo, hi)


def brute_range_pairs(
    events: Sequence[InteractionEvent], widget_id: str
) -> Dict[Tuple[float, float], int]:
    counts: Dict[Tuple[float, float], int] = {}
    for e in interaction_events_of(events, widget_id):
        pair = (e.value.low, e.value.high)
        counts[pair] = counts.get(pair, 0) + 1
    return counts


def brute_selection_counts(
    events: Sequence[InteractionEvent], descriptor: WidgetDescriptor
) -> Tuple[Dict[str, int], Dict[str, int]]:
    """(selection_counts, interaction_counts), replayed item by item."""
    options = list(descriptor.domain.options)
    selection = {opt: 0 for opt in options}
    interaction = {opt: 0 for opt in options}
    previous = set(descriptor.initial_value.selected)
    for e in interaction_events_of(events, descriptor.id):
        current = set(e.value.selected)
        for opt in options:
            was_in = opt in previous
            now_in = opt in current
            if was_in != now_in:
                interaction[opt] += 1
                if now_in:
                    selection[opt] += 1
        previous = current
    return selection, interaction


def brute_per_widget_counts(
    events: Sequence[InteractionEvent], widget_ids: Sequence[str]
) -> Dict[str, int]:
    return {w: len(interaction_events_of(events, w)) for w in widget_ids}


def forward_state_table(
    descriptors: Sequence[WidgetDescriptor], events: Sequence[InteractionEvent]
) -> List[Dict[str, WidgetValue]]:
    """Naive interpreter: the full UI state after each event, by forward replay.

    ``table[s]`` is the state after the event at seq s; a restore event copies
    the state previously materialized at its target.
    """
    table: List[Dict[str, WidgetValue]] = []
    state = {d.id: d.initial_value for d in descriptors}
    for e in events:
        if e.kind is EventKind.RESTORE:
            state = dict(table[e.restore_target])
        else:
            state = dict(state)
            state[e.widget_id] = e.value
        table.append(state)
    return table


def brute_co_interaction(
    events: Sequence[InteractionEvent], window_k: int
) -> Dict[Tuple[str, str], int]:
    interactions = [e for e in events if e.kind is EventKind.INTERACTION]
    counts: Dict[Tuple[str, str], int] = {}
    for i in range(len(interactions)):
        for j in range(i + 1, min(i + window_k, len(interactions) - 1) + 1):
            a = interactions[i].widget_id
            b = interactions[j].widget_id
            if a == b:
                continue
            key = (a, b) if a <= b else (b, a)
            counts[key] = counts.get(key, 0) + 1
    return counts
