"""Core provenance engine: widget registry, append-only event log, typed per-widget records.

A :class:`Session` is the single-writer ingestion point. It assigns dense
sequence numbers, clamps regressing wall clocks, keeps per-widget event lists,
and produces immutable :class:`ProvenanceSnapshot` values that every other
module (layout, recovery, analysis, persistence) consumes.
"""
from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    DuplicateWidgetId,
    InvalidInitialValue,
    InvalidValue,
    ReentrancyError,
    SeqOutOfRange,
    UnknownWidgetId,
)

# 10-hue categorical scheme; indices cycle for sessions with more widgets.
DEFAULT_PALETTE: Tuple[str, ...] = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


class WidgetKind(str, Enum):
    RADIO_GROUP = "radio-group"
    CHECKBOX_GROUP = "checkbox-group"
    SINGLE_SLIDER = "single-slider"
    RANGE_SLIDER = "range-slider"
    SINGLE_SELECT = "single-select"
    MULTI_SELECT = "multi-select"
    TEXT_INPUT = "text-input"


#: Kinds whose values are option selections.
SELECTION_KINDS = frozenset(
    {
        WidgetKind.RADIO_GROUP,
        WidgetKind.CHECKBOX_GROUP,
        WidgetKind.SINGLE_SELECT,
        WidgetKind.MULTI_SELECT,
    }
)
#: Selection kinds that must hold exactly one selected option.
SINGLETON_KINDS = frozenset({WidgetKind.RADIO_GROUP, WidgetKind.SINGLE_SELECT})


class EventKind(str, Enum):
    INTERACTION = "interaction"
    RESTORE = "restore"


# ---------------------------------------------------------------------------
# Value domains and values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumericDomain:
    """Inclusive numeric bounds for slider kinds."""

    low: float
    high: float

    def __post_init__(self):
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "high", float(self.high))
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise ValueError("numeric domain bounds must be finite")
        if not self.low <= self.high:
            raise ValueError(f"numeric domain low {self.low} > high {self.high}")


@dataclass(frozen=True)
class OptionsDomain:
    """Ordered option list for selection kinds."""

    options: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "options", tuple(self.options))
        if not self.options:
            raise ValueError("options domain must not be empty")
        if len(set(self.options)) != len(self.options):
            raise ValueError("options domain entries must be unique")


ValueDomain = Optional[Union[NumericDomain, OptionsDomain]]


@dataclass(frozen=True)
class NumericValue:
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class RangeValue:
    low: float
    high: float

    def __post_init__(self):
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "high", float(self.high))


@dataclass(frozen=True)
class SelectionValue:
    selected: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "selected", frozenset(self.selected))


@dataclass(frozen=True)
class TextValue:
    value: str


WidgetValue = Union[NumericValue, RangeValue, SelectionValue, TextValue]

#: Expected value class per widget kind.
VALUE_CLASS_FOR_KIND: Mapping[WidgetKind, type] = {
    WidgetKind.SINGLE_SLIDER: NumericValue,
    WidgetKind.RANGE_SLIDER: RangeValue,
    WidgetKind.RADIO_GROUP: SelectionValue,
    WidgetKind.CHECKBOX_GROUP: SelectionValue,
    WidgetKind.SINGLE_SELECT: SelectionValue,
    WidgetKind.MULTI_SELECT: SelectionValue,
    WidgetKind.TEXT_INPUT: TextValue,
}


def validate_value(kind: WidgetKind, domain: ValueDomain, value: WidgetValue) -> None:
    """Raise :class:`InvalidValue` unless ``value`` fits the kind/domain."""
    expected = VALUE_CLASS_FOR_KIND[kind]
    if not isinstance(value, expected):
        raise InvalidValue(
            f"{kind.value} expects {expected.__name__}, got {type(value).__name__}"
        )
    if isinstance(value, NumericValue):
        assert isinstance(domain, NumericDomain)
        if not math.isfinite(value.value):
            raise InvalidValue(f"value must be finite, got {value.value}")
        if not domain.low <= value.value <= domain.high:
            raise InvalidValue(
                f"value {value.value} outside domain [{domain.low}, {domain.high}]"
            )
    elif isinstance(value, RangeValue):
        assert isinstance(domain, NumericDomain)
        if not (math.isfinite(value.low) and math.isfinite(value.high)):
            raise InvalidValue("range bounds must be finite")
        if value.low > value.high:
            raise InvalidValue(f"range low {value.low} > high {value.high}")
        if value.low < domain.low or value.high > domain.high:
            raise InvalidValue(
                f"range [{value.low}, {value.high}] outside domain "
                f"[{domain.low}, {domain.high}]"
            )
    elif isinstance(value, SelectionValue):
        assert isinstance(domain, OptionsDomain)
        unknown = value.selected - set(domain.options)
        if unknown:
            raise InvalidValue(f"selected ids not in option list: {sorted(unknown)}")
        if kind in SINGLETON_KINDS and len(value.selected) != 1:
            raise InvalidValue(
                f"{kind.value} requires exactly one selected option, "
                f"got {len(value.selected)}"
            )
    # TextValue: any string, stored verbatim.


def _check_kind_domain(kind: WidgetKind, domain: ValueDomain) -> None:
    if kind in (WidgetKind.SINGLE_SLIDER, WidgetKind.RANGE_SLIDER):
        if not isinstance(domain, NumericDomain):
            raise InvalidInitialValue(f"{kind.value} requires a NumericDomain")
    elif kind in SELECTION_KINDS:
        if not isinstance(domain, OptionsDomain):
            raise InvalidInitialValue(f"{kind.value} requires an OptionsDomain")
    else:  # text-input
        if domain is not None:
            raise InvalidInitialValue("text-input takes no value domain")


# ---------------------------------------------------------------------------
# Descriptors, events, records, snapshots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WidgetDescriptor:
    id: str
    kind: WidgetKind
    label: str
    domain: ValueDomain
    initial_value: WidgetValue
    registration_index: int
    color_index: int


@dataclass(frozen=True)
class InteractionEvent:
    """One logged change: a widget interaction, or a restore meta-event.

    Interaction events carry ``widget_id`` and ``value``; restore events carry
    ``restore_target`` (the seq whose state was restored) and no payload.
    """

    seq: int
    kind: EventKind
    wall_time: int
    widget_id: Optional[str] = None
    value: Optional[WidgetValue] = None
    restore_target: Optional[int] = None


@dataclass(frozen=True)
class NumericRecord:
    events: Tuple[InteractionEvent, ...]
    observed_min: Optional[float]
    observed_max: Optional[float]


@dataclass(frozen=True)
class RangedRecord:
    events: Tuple[InteractionEvent, ...]
    pair_counts: Mapping[Tuple[float, float], int]
    domain_low: float
    domain_high: float


@dataclass(frozen=True)
class SelectionRecord:
    events: Tuple[InteractionEvent, ...]
    selection_counts: Mapping[str, int]
    interaction_counts: Mapping[str, int]


@dataclass(frozen=True)
class TextRecord:
    events: Tuple[InteractionEvent, ...]


ProvenanceRecord = Union[NumericRecord, RangedRecord, SelectionRecord, TextRecord]


@dataclass(frozen=True)
class WidgetStats:
    count: int
    first_seq: Optional[int]
    last_seq: Optional[int]
    last_wall_time: Optional[int]
    record: ProvenanceRecord


@dataclass(frozen=True)
class ProvenanceSnapshot:
    """Immutable view of a session: registry, full log, derived statistics."""

    widgets: Tuple[WidgetDescriptor, ...]
    events: Tuple[InteractionEvent, ...]
    per_widget: Mapping[str, WidgetStats]
    global_count: int

    def descriptor(self, widget_id: str) -> WidgetDescriptor:
        for d in self.widgets:
            if d.id == widget_id:
                return d
        raise UnknownWidgetId(widget_id)

    def widget_ids(self) -> Tuple[str, ...]:
        return tuple(d.id for d in self.widgets)


def widget_stats(snapshot: ProvenanceSnapshot, widget_id: str) -> WidgetStats:
    """Per-widget statistics (count, first/last seq, last wall time, record)."""
    try:
        return snapshot.per_widget[widget_id]
    except KeyError:
        raise UnknownWidgetId(widget_id) from None


def _build_record(
    descriptor: WidgetDescriptor, events: Tuple[InteractionEvent, ...]
) -> ProvenanceRecord:
    kind = descriptor.kind
    if kind is WidgetKind.SINGLE_SLIDER:
        values = [e.value.value for e in events]  # type: ignore[union-attr]
        return NumericRecord(
            events=events,
            observed_min=min(values) if values else None,
            observed_max=max(values) if values else None,
        )
    if kind is WidgetKind.RANGE_SLIDER:
        pairs = Counter((e.value.low, e.value.high) for e in events)  # type: ignore[union-attr]
        domain = descriptor.domain
        assert isinstance(domain, NumericDomain)
        return RangedRecord(
            events=events,
            pair_counts=dict(pairs),
            domain_low=domain.low,
            domain_high=domain.high,
        )
    if kind in SELECTION_KINDS:
        domain = descriptor.domain
        assert isinstance(domain, OptionsDomain)
        selection_counts = {opt: 0 for opt in domain.options}
        interaction_counts = {opt: 0 for opt in domain.options}
        prev = descriptor.initial_value.selected  # type: ignore[union-attr]
        for e in events:
            cur = e.value.selected  # type: ignore[union-attr]
            for item in prev ^ cur:
                interaction_counts[item] += 1
                if item in cur:
                    selection_counts[item] += 1
            prev = cur
        return SelectionRecord(
            events=events,
            selection_counts=selection_counts,
            interaction_counts=interaction_counts,
        )
    return TextRecord(events=events)


def _now_ms() -> int:
    return int(time.time() * 1000)


# ---------------------------------------------------------------------------
# Session
# ---------------------------------------------------------------------------


class Session:
    """Single-writer provenance session.

    All mutating calls must be serialized by the caller; snapshots are
    immutable values safe to share across threads. Observers (any object with
    ``on_change`` / ``on_navigate`` / ``on_restore`` callables) are notified
    synchronously; mutating the session from inside a callback raises
    :class:`ReentrancyError`.
    """

    def __init__(
        self,
        *,
        palette: Sequence[str] = DEFAULT_PALETTE,
        coalescing_window_ms: Optional[int] = None,
        clock: Optional[Callable[[], int]] = None,
    ):
        if not palette:
            raise ValueError("palette must not be empty")
        self._palette: Tuple[str, ...] = tuple(palette)
        self._coalescing_window_ms = coalescing_window_ms
        self._clock = clock or _now_ms
        self._descriptors: Dict[str, WidgetDescriptor] = {}
        self._events: list[InteractionEvent] = []
        self._by_widget: Dict[str, list[InteractionEvent]] = {}
        self._observers: list[Any] = []
        self._dispatch_depth = 0
        #: opaque slot for embedders (e.g. the SessionConfig that created us)
        self.config: Any = None

    @property
    def palette(self) -> Tuple[str, ...]:
        return self._palette

    @property
    def coalescing_window_ms(self) -> Optional[int]:
        return self._coalescing_window_ms

    def __len__(self) -> int:
        return len(self._events)

    # -- mutations ----------------------------------------------------------

    def register_widget(
        self,
        widget_id: str,
        kind: WidgetKind,
        initial_value: WidgetValue,
        *,
        label: str = "",
        domain: ValueDomain = None,
    ) -> WidgetDescriptor:
        """Register a control; assigns registration_index and color_index."""
        self._guard_mutation()
        if not isinstance(widget_id, str) or not widget_id:
            raise ValueError("widget id must be a non-empty string")
        if widget_id in self._descriptors:
            raise DuplicateWidgetId(widget_id)
        kind = WidgetKind(kind)
        _check_kind_domain(kind, domain)
        try:
            validate_value(kind, domain, initial_value)
        except InvalidValue as exc:
            raise InvalidInitialValue(str(exc)) from None
        index = len(self._descriptors)
        descriptor = WidgetDescriptor(
            id=widget_id,
            kind=kind,
            label=label,
            domain=domain,
            initial_value=initial_value,
            registration_index=index,
            color_index=index % len(self._palette),
        )
        self._descriptors[widget_id] = descriptor
        self._by_widget[widget_id] = []
        # No on_change here: observers see one delivery per event-log mutation
        # (record/restore), keeping delivered global_counts strictly increasing.
        return descriptor

    def record_interaction(
        self, widget_id: str, value: WidgetValue, wall_time: Optional[int] = None
    ) -> int:
        """Append one committed value change; returns its sequence number.

        With a coalescing window configured, a change that lands within the
        window right after another change to the same widget replaces that
        event's value in place and reuses its seq.
        """
        self._guard_mutation()
        descriptor = self._descriptors.get(widget_id)
        if descriptor is None:
            raise UnknownWidgetId(widget_id)
        validate_value(descriptor.kind, descriptor.domain, value)
        wall = self._stamp(wall_time)

        tail = self._events[-1] if self._events else None
        if (
            self._coalescing_window_ms is not None
            and tail is not None
            and tail.kind is EventKind.INTERACTION
            and tail.widget_id == widget_id
            and wall - tail.wall_time <= self._coalescing_window_ms
        ):
            event = InteractionEvent(
                seq=tail.seq,
                kind=EventKind.INTERACTION,
                wall_time=wall,
                widget_id=widget_id,
                value=value,
            )
            self._events[-1] = event
            self._by_widget[widget_id][-1] = event
        else:
            event = InteractionEvent(
                seq=len(self._events),
                kind=EventKind.INTERACTION,
                wall_time=wall,
                widget_id=widget_id,
                value=value,
            )
            self._events.append(event)
            self._by_widget[widget_id].append(event)
        self._notify_change()
        return event.seq

    def ingest_restore(
        self,
        restore_target: int,
        wall_time: Optional[int] = None,
        state_map: Optional[Mapping[str, WidgetValue]] = None,
    ) -> InteractionEvent:
        """Append a restore meta-event referencing ``restore_target``.

        Used by the recovery module (which supplies the computed StateMap so
        observers get their ``on_restore`` callback) and by log replay (which
        passes no StateMap). Restore events increment no widget counts.
        """
        self._guard_mutation()
        if not isinstance(restore_target, int) or isinstance(restore_target, bool):
            raise SeqOutOfRange(restore_target, len(self._events))
        if not 0 <= restore_target < len(self._events):
            raise SeqOutOfRange(restore_target, len(self._events))
        event = InteractionEvent(
            seq=len(self._events),
            kind=EventKind.RESTORE,
            wall_time=self._stamp(wall_time),
            restore_target=restore_target,
        )
        self._events.append(event)
        if state_map is not None:
            self._dispatch("on_restore", dict(state_map))
        self._notify_change()
        return event

    # -- reads --------------------------------------------------------------

    def snapshot(self) -> ProvenanceSnapshot:
        """Immutable, self-consistent view of everything ingested so far."""
        per_widget: Dict[str, WidgetStats] = {}
        for widget_id, descriptor in self._descriptors.items():
            events = tuple(self._by_widget[widget_id])
            per_widget[widget_id] = WidgetStats(
                count=len(events),
                first_seq=events[0].seq if events else None,
                last_seq=events[-1].seq if events else None,
                last_wall_time=events[-1].wall_time if events else None,
                record=_build_record(descriptor, events),
            )
        return ProvenanceSnapshot(
            widgets=tuple(self._descriptors.values()),
            events=tuple(self._events),
            per_widget=per_widget,
            global_count=len(self._events),
        )

    def is_registered(self, widget_id: str) -> bool:
        return widget_id in self._descriptors

    # -- observers ----------------------------------------------------------

    def add_observer(self, observer: Any) -> None:
        self._observers.append(observer)

    def remove_observer(self, observer: Any) -> None:
        self._observers.remove(observer)

    def dispatch_navigate(self, widget_id: str) -> None:
        """Signal hosts to bring a control into view; never mutates the log."""
        if widget_id not in self._descriptors:
            raise UnknownWidgetId(widget_id)
        self._dispatch("on_navigate", widget_id)

    # -- internals ----------------------------------------------------------

    def _stamp(self, wall_time: Optional[int]) -> int:
        wall = self._clock() if wall_time is None else int(wall_time)
        if self._events and wall < self._events[-1].wall_time:
            wall = self._events[-1].wall_time  # clamp clock regression
        return wall

    def _guard_mutation(self) -> None:
        if self._dispatch_depth > 0:
            raise ReentrancyError("session mutation from inside an observer callback")

    def _notify_change(self) -> None:
        if not self._observers:
            return
        self._dispatch("on_change", self.snapshot())

    def _dispatch(self, name: str, payload: Any) -> None:
        if not self._observers:
            return
        self._dispatch_depth += 1
        try:
            for observer in list(self._observers):
                callback = getattr(observer, name, None)
                if callback is not None:
                    callback(payload)
        finally:
            self._dispatch_depth -= 1
