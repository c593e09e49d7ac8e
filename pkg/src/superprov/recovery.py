"""Action recovery: historic value lookup, full-state restore, and log replay.

A restore meta-event at seq r with target t resets every widget to its
effective value at t. Effective values resolve restore chains transitively;
termination is guaranteed because restore_target < seq.
"""
from __future__ import annotations

from typing import Dict, Optional, Sequence

from .core import (
    EventKind,
    InteractionEvent,
    ProvenanceSnapshot,
    Session,
    WidgetDescriptor,
    WidgetValue,
)
from .errors import (
    InvalidValue,
    MalformedLog,
    ProvenanceError,
    SeqOutOfRange,
    UnknownWidgetId,
)

#: widget_id -> value for every registered widget; the unit of action recovery.
StateMap = Dict[str, WidgetValue]


def value_at(snapshot: ProvenanceSnapshot, widget_id: str, seq: int) -> WidgetValue:
    """Effective value of one widget after the event at ``seq``.

    ``seq`` may exceed the log (meaning "now"). Returns the initial value if
    no interaction or restore affects the widget at or before ``seq``.
    """
    descriptor = snapshot.descriptor(widget_id)
    if seq < 0:
        raise SeqOutOfRange(seq, len(snapshot.events))
    position = min(seq, len(snapshot.events) - 1)
    while position >= 0:
        event = snapshot.events[position]
        if event.kind is EventKind.RESTORE:
            position = event.restore_target  # type: ignore[assignment]
            continue
        if event.widget_id == widget_id:
            return event.value  # type: ignore[return-value]
        position -= 1
    return descriptor.initial_value


def state_at(snapshot: ProvenanceSnapshot, seq: int) -> StateMap:
    """Effective values of all widgets after the event at ``seq``.

    Single backward sweep: widgets resolve at their own last interaction; a
    restore event redirects every still-unresolved widget to its target.
    """
    if seq < 0:
        raise SeqOutOfRange(seq, len(snapshot.events))
    state: StateMap = {}
    pending = {d.id for d in snapshot.widgets}
    position = min(seq, len(snapshot.events) - 1)
    while position >= 0 and pending:
        event = snapshot.events[position]
        if event.kind is EventKind.RESTORE:
            position = event.restore_target  # type: ignore[assignment]
            continue
        if event.widget_id in pending:
            state[event.widget_id] = event.value  # type: ignore[index, assignment]
            pending.discard(event.widget_id)  # type: ignore[arg-type]
        position -= 1
    for d in snapshot.widgets:
        if d.id in pending:
            state[d.id] = d.initial_value
    return {d.id: state[d.id] for d in snapshot.widgets}


def restore_to(session: Session, seq: int, wall_time: Optional[int] = None) -> StateMap:
    """Revert the session to the state after ``seq``.

    Computes the full StateMap, appends one restore meta-event, and returns
    the map for the host to apply to its controls (the engine never touches
    UI). Observers get on_restore then on_change.
    """
    snapshot = session.snapshot()
    if not 0 <= seq < len(snapshot.events):
        raise SeqOutOfRange(seq, len(snapshot.events))
    state = state_at(snapshot, seq)
    session.ingest_restore(seq, wall_time=wall_time, state_map=state)
    return state


def replay(
    descriptors: Sequence[WidgetDescriptor], events: Sequence[InteractionEvent]
) -> ProvenanceSnapshot:
    """Rebuild a snapshot by re-ingesting a raw event list.

    Validates the dense-seq invariant and every value against its widget;
    raises MalformedLog with the offending seq.
    """
    return build_session(descriptors, events).snapshot()


def build_session(
    descriptors: Sequence[WidgetDescriptor], events: Sequence[InteractionEvent]
) -> Session:
    """Validating replay that returns the live session (see :func:`replay`).

    Coalescing never applies (the log is already in its final shape), and
    stored color indices are kept verbatim so custom-palette sessions
    round-trip.
    """
    session = Session()
    for position, descriptor in enumerate(descriptors):
        if descriptor.registration_index != position:
            raise MalformedLog(
                f"widget {descriptor.id!r} has registration_index "
                f"{descriptor.registration_index}, expected {position}"
            )
        if descriptor.color_index < 0:
            raise MalformedLog(f"widget {descriptor.id!r} has negative color_index")
        try:
            registered = session.register_widget(
                descriptor.id,
                descriptor.kind,
                descriptor.initial_value,
                label=descriptor.label,
                domain=descriptor.domain,
            )
        except ProvenanceError as exc:
            raise MalformedLog(f"bad descriptor {descriptor.id!r}: {exc}") from None
        if registered.color_index != descriptor.color_index:
            # Session was created under a different palette size; keep the
            # original assignment.
            session._descriptors[descriptor.id] = descriptor

    for position, event in enumerate(events):
        if event.seq != position:
            raise MalformedLog(
                f"sequence gap: expected seq {position}, got {event.seq}",
                seq=event.seq,
            )
        if event.kind is EventKind.RESTORE:
            if event.widget_id is not None or event.value is not None:
                raise MalformedLog("restore event carries a payload", seq=event.seq)
            if event.restore_target is None or not 0 <= event.restore_target < position:
                raise MalformedLog(
                    f"restore_target {event.restore_target} invalid", seq=event.seq
                )
            session.ingest_restore(event.restore_target, wall_time=event.wall_time)
            continue
        if event.widget_id is None or event.value is None:
            raise MalformedLog("interaction event missing payload", seq=event.seq)
        if event.restore_target is not None:
            raise MalformedLog(
                "interaction event carries restore_target", seq=event.seq
            )
        if not session.is_registered(event.widget_id):
            raise MalformedLog(
                f"event references unknown widget {event.widget_id!r}", seq=event.seq
            )
        try:
            session.record_interaction(
                event.widget_id, event.value, wall_time=event.wall_time
            )
        except (InvalidValue, UnknownWidgetId) as exc:
            raise MalformedLog(str(exc), seq=event.seq) from None
    return session
