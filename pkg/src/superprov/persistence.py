"""Versioned session documents, NDJSON stream logs, and SVG rendering.

Wire formats:

* Session document: UTF-8 JSON with top-level keys exactly
  ``{"format_version", "exported_at", "widgets", "events"}``.
* Stream log: NDJSON, one header line carrying the widgets array, then one
  event object per line (append-while-running friendly).

Both render canonically (fixed key order, events in seq order) so identical
logs serialize byte-identically apart from ``exported_at``.
"""
from __future__ import annotations

import json
import time
from typing import IO, Any, Dict, List, Optional, Sequence, Tuple, Union

from .analysis import AuditReport
from .core import (
    EventKind,
    InteractionEvent,
    NumericDomain,
    NumericValue,
    OptionsDomain,
    ProvenanceSnapshot,
    RangeValue,
    SelectionValue,
    TextValue,
    ValueDomain,
    WidgetDescriptor,
    WidgetKind,
    WidgetValue,
    validate_value,
)
from .errors import ParseError, SchemaError
from .layout import AggregateBox, TemporalBar, TemporalLayout

FORMAT_VERSION = "1"

DOCUMENT_KEYS = ("format_version", "exported_at", "widgets", "events")
EVENT_KEYS = ("seq", "widget_id", "value", "wall_time", "kind", "restore_target")
WIDGET_KEYS = (
    "id",
    "kind",
    "label",
    "domain",
    "initial_value",
    "registration_index",
    "color_index",
)


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------


def value_to_json(value: WidgetValue) -> Dict[str, Any]:
    if isinstance(value, NumericValue):
        return {"type": "numeric", "value": value.value}
    if isinstance(value, RangeValue):
        return {"type": "range", "low": value.low, "high": value.high}
    if isinstance(value, SelectionValue):
        return {"type": "selection", "selected": sorted(value.selected)}
    if isinstance(value, TextValue):
        return {"type": "text", "value": value.value}
    raise TypeError(f"not a widget value: {value!r}")


def domain_to_json(domain: ValueDomain) -> Optional[Dict[str, Any]]:
    if domain is None:
        return None
    if isinstance(domain, NumericDomain):
        return {"type": "numeric", "low": domain.low, "high": domain.high}
    if isinstance(domain, OptionsDomain):
        return {"type": "options", "options": list(domain.options)}
    raise TypeError(f"not a value domain: {domain!r}")


def descriptor_to_json(descriptor: WidgetDescriptor) -> Dict[str, Any]:
    return {
        "id": descriptor.id,
        "kind": descriptor.kind.value,
        "label": descriptor.label,
        "domain": domain_to_json(descriptor.domain),
        "initial_value": value_to_json(descriptor.initial_value),
        "registration_index": descriptor.registration_index,
        "color_index": descriptor.color_index,
    }


def event_to_json(event: InteractionEvent) -> Dict[str, Any]:
    if event.kind is EventKind.RESTORE:
        return {
            "seq": event.seq,
            "wall_time": event.wall_time,
            "kind": event.kind.value,
            "restore_target": event.restore_target,
        }
    return {
        "seq": event.seq,
        "widget_id": event.widget_id,
        "value": value_to_json(event.value),  # type: ignore[arg-type]
        "wall_time": event.wall_time,
        "kind": event.kind.value,
    }


def serialize_session(
    snapshot: ProvenanceSnapshot, exported_at: Optional[int] = None
) -> bytes:
    """Canonical session document bytes (stable across runs for equal logs)."""
    document = {
        "format_version": FORMAT_VERSION,
        "exported_at": int(time.time() * 1000) if exported_at is None else int(exported_at),
        "widgets": [descriptor_to_json(d) for d in snapshot.widgets],
        "events": [event_to_json(e) for e in snapshot.events],
    }
    rendered = json.dumps(document, indent=2, ensure_ascii=False, allow_nan=False)
    return (rendered + "\n").encode("utf-8")


def serialize_stream(snapshot: ProvenanceSnapshot) -> bytes:
    """NDJSON rendering: header line with the widgets array, one event per line."""
    lines = [stream_header_line(snapshot.widgets)]
    lines.extend(event_line(e) for e in snapshot.events)
    return ("\n".join(lines) + "\n").encode("utf-8")


def stream_header_line(widgets: Sequence[WidgetDescriptor]) -> str:
    header = {
        "format_version": FORMAT_VERSION,
        "widgets": [descriptor_to_json(d) for d in widgets],
    }
    return json.dumps(header, ensure_ascii=False, allow_nan=False)


def event_line(event: InteractionEvent) -> str:
    return json.dumps(event_to_json(event), ensure_ascii=False, allow_nan=False)


class StreamLogWriter:
    """Append-while-running NDJSON logger; one flushed line per event."""

    def __init__(self, fp: IO[str], widgets: Sequence[WidgetDescriptor]):
        self._fp = fp
        self._fp.write(stream_header_line(widgets) + "\n")
        self._fp.flush()

    def append(self, event: InteractionEvent) -> None:
        self._fp.write(event_line(event) + "\n")
        self._fp.flush()


def report_to_json(report: AuditReport) -> Dict[str, Any]:
    """Audit report in the same JSON dialect as session documents."""
    return {
        "global_count": report.global_count,
        "started_at": report.started_at,
        "ended_at": report.ended_at,
        "widgets": [
            {
                "id": w.id,
                "kind": w.kind.value,
                "count": w.count,
                "first_wall_time": w.first_wall_time,
                "last_wall_time": w.last_wall_time,
                "last_value": (
                    value_to_json(w.last_value) if w.last_value is not None else None
                ),
                "record": dict(w.record_summary),
            }
            for w in report.widgets
        ],
        "events": [event_to_json(e) for e in report.events],
    }


# ---------------------------------------------------------------------------
# JSON decoding / validation
# ---------------------------------------------------------------------------


def _require(condition: bool, message: str, path: str) -> None:
    if not condition:
        raise SchemaError(message, path)


def _decode_value(obj: Any, path: str) -> WidgetValue:
    _require(isinstance(obj, dict), "value must be an object", path)
    value_type = obj.get("type")
    if value_type == "numeric":
        _require(set(obj) == {"type", "value"}, "numeric value keys", path)
        _require(_is_number(obj["value"]), "numeric value must be a number", path)
        return NumericValue(float(obj["value"]))
    if value_type == "range":
        _require(set(obj) == {"type", "low", "high"}, "range value keys", path)
        _require(
            _is_number(obj["low"]) and _is_number(obj["high"]),
            "range bounds must be numbers",
            path,
        )
        return RangeValue(float(obj["low"]), float(obj["high"]))
    if value_type == "selection":
        _require(set(obj) == {"type", "selected"}, "selection value keys", path)
        selected = obj["selected"]
        _require(
            isinstance(selected, list) and all(isinstance(s, str) for s in selected),
            "selected must be a list of strings",
            path,
        )
        return SelectionValue(frozenset(selected))
    if value_type == "text":
        _require(set(obj) == {"type", "value"}, "text value keys", path)
        _require(isinstance(obj["value"], str), "text value must be a string", path)
        return TextValue(obj["value"])
    raise SchemaError(f"unknown value type {value_type!r}", path)


def _decode_domain(obj: Any, path: str) -> ValueDomain:
    if obj is None:
        return None
    _require(isinstance(obj, dict), "domain must be an object or null", path)
    domain_type = obj.get("type")
    if domain_type == "numeric":
        _require(set(obj) == {"type", "low", "high"}, "numeric domain keys", path)
        _require(
            _is_number(obj["low"]) and _is_number(obj["high"]),
            "domain bounds must be numbers",
            path,
        )
        try:
            return NumericDomain(float(obj["low"]), float(obj["high"]))
        except ValueError as exc:
            raise SchemaError(str(exc), path) from None
    if domain_type == "options":
        _require(set(obj) == {"type", "options"}, "options domain keys", path)
        options = obj["options"]
        _require(
            isinstance(options, list) and all(isinstance(o, str) for o in options),
            "options must be a list of strings",
            path,
        )
        try:
            return OptionsDomain(tuple(options))
        except ValueError as exc:
            raise SchemaError(str(exc), path) from None
    raise SchemaError(f"unknown domain type {domain_type!r}", path)


def _is_number(x: Any) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _decode_widget(obj: Any, position: int, path: str) -> WidgetDescriptor:
    _require(isinstance(obj, dict), "widget must be an object", path)
    _require(
        set(obj) == set(WIDGET_KEYS),
        f"widget keys must be exactly {sorted(WIDGET_KEYS)}",
        path,
    )
    _require(
        isinstance(obj["id"], str) and obj["id"] != "",
        "id must be a non-empty string",
        f"{path}.id",
    )
    try:
        kind = WidgetKind(obj["kind"])
    except ValueError:
        raise SchemaError(f"unknown widget kind {obj['kind']!r}", f"{path}.kind") from None
    _require(isinstance(obj["label"], str), "label must be a string", f"{path}.label")
    domain = _decode_domain(obj["domain"], f"{path}.domain")
    initial_value = _decode_value(obj["initial_value"], f"{path}.initial_value")
    _require(
        _is_int(obj["registration_index"]) and obj["registration_index"] == position,
        f"registration_index must equal list position {position}",
        f"{path}.registration_index",
    )
    _require(
        _is_int(obj["color_index"]) and obj["color_index"] >= 0,
        "color_index must be a non-negative integer",
        f"{path}.color_index",
    )
    descriptor = WidgetDescriptor(
        id=obj["id"],
        kind=kind,
        label=obj["label"],
        domain=domain,
        initial_value=initial_value,
        registration_index=obj["registration_index"],
        color_index=obj["color_index"],
    )
    try:
        validate_value(kind, domain, initial_value)
    except Exception as exc:
        raise SchemaError(str(exc), f"{path}.initial_value") from None
    return descriptor


def _decode_event(
    obj: Any,
    position: int,
    widgets: Dict[str, WidgetDescriptor],
    previous_wall: Optional[int],
    path: str,
) -> InteractionEvent:
    _require(isinstance(obj, dict), "event must be an object", path)
    _require(_is_int(obj.get("seq")), "seq must be an integer", f"{path}.seq")
    _require(
        obj["seq"] == position,
        f"seq must be dense: expected {position}, got {obj['seq']}",
        f"{path}.seq",
    )
    _require(_is_int(obj.get("wall_time")), "wall_time must be an integer", f"{path}.wall_time")
    if previous_wall is not None:
        _require(
            obj["wall_time"] >= previous_wall,
            "wall_time must be non-decreasing",
            f"{path}.wall_time",
        )
    kind = obj.get("kind")
    if kind == EventKind.RESTORE.value:
        _require(
            set(obj) == {"seq", "wall_time", "kind", "restore_target"},
            "restore event keys must be exactly [seq, wall_time, kind, restore_target]",
            path,
        )
        target = obj["restore_target"]
        _require(
            _is_int(target) and 0 <= target < position,
            f"restore_target must be an integer in [0, {position})",
            f"{path}.restore_target",
        )
        return InteractionEvent(
            seq=position,
            kind=EventKind.RESTORE,
            wall_time=obj["wall_time"],
            restore_target=target,
        )
    if kind == EventKind.INTERACTION.value:
        _require(
            set(obj) == {"seq", "widget_id", "value", "wall_time", "kind"},
            "interaction event keys must be exactly [seq, widget_id, value, wall_time, kind]",
            path,
        )
        widget_id = obj["widget_id"]
        _require(isinstance(widget_id, str), "widget_id must be a string", f"{path}.widget_id")
        descriptor = widgets.get(widget_id)
        _require(descriptor is not None, f"unknown widget id {widget_id!r}", f"{path}.widget_id")
        value = _decode_value(obj["value"], f"{path}.value")
        try:
            validate_value(descriptor.kind, descriptor.domain, value)  # type: ignore[union-attr]
        except Exception as exc:
            raise SchemaError(str(exc), f"{path}.value") from None
        return InteractionEvent(
            seq=position,
            kind=EventKind.INTERACTION,
            wall_time=obj["wall_time"],
            widget_id=widget_id,
            value=value,
        )
    raise SchemaError(f"unknown event kind {kind!r}", f"{path}.kind")


def _decode_widget_list(obj: Any, path: str) -> List[WidgetDescriptor]:
    _require(isinstance(obj, list), "widgets must be an array", path)
    widgets = [
        _decode_widget(item, i, f"{path}[{i}]") for i, item in enumerate(obj)
    ]
    ids = [d.id for d in widgets]
    _require(len(set(ids)) == len(ids), "widget ids must be unique", path)
    return widgets


def _reject_constant(token: str):
    # NaN/Infinity are not valid JSON; surface them as syntax errors
    raise ValueError(f"non-finite JSON constant {token!r}")


def _loads_strict(text: str):
    return json.loads(text, parse_constant=_reject_constant)


def parse_session(data: bytes) -> Tuple[List[WidgetDescriptor], List[InteractionEvent]]:
    """Parse and fully validate a session document; ready for replay."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("document is not valid UTF-8", offset=exc.start) from None
    try:
        obj = _loads_strict(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", offset=exc.pos) from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    _require(isinstance(obj, dict), "document must be a JSON object", "$")
    _require(
        set(obj) == set(DOCUMENT_KEYS),
        f"document keys must be exactly {sorted(DOCUMENT_KEYS)}",
        "$",
    )
    _require(
        obj["format_version"] == FORMAT_VERSION,
        f"unsupported format_version {obj['format_version']!r}",
        "$.format_version",
    )
    _require(_is_int(obj["exported_at"]), "exported_at must be an integer", "$.exported_at")
    widgets = _decode_widget_list(obj["widgets"], "$.widgets")
    by_id = {d.id: d for d in widgets}
    _require(isinstance(obj["events"], list), "events must be an array", "$.events")
    events: List[InteractionEvent] = []
    previous_wall: Optional[int] = None
    for i, item in enumerate(obj["events"]):
        event = _decode_event(item, i, by_id, previous_wall, f"$.events[{i}]")
        previous_wall = event.wall_time
        events.append(event)
    return widgets, events


def parse_stream(data: bytes) -> Tuple[List[WidgetDescriptor], List[InteractionEvent]]:
    """Parse an NDJSON stream log (header line + one event per line)."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("stream is not valid UTF-8", offset=exc.start) from None
    offset = 0
    lines = []
    for raw in text.split("\n"):
        lines.append((offset, raw))
        offset += len(raw.encode("utf-8")) + 1
    lines = [(off, line) for off, line in lines if line.strip()]
    if not lines:
        raise ParseError("stream log is empty", offset=0)

    def load_line(off: int, line: str) -> Any:
        try:
            return _loads_strict(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON line: {exc.msg}", offset=off + exc.pos) from None
        except ValueError as exc:
            raise ParseError(str(exc), offset=off) from None

    header = load_line(*lines[0])
    _require(isinstance(header, dict), "header must be a JSON object", "$.header")
    _require(
        set(header) == {"format_version", "widgets"},
        "header keys must be exactly [format_version, widgets]",
        "$.header",
    )
    _require(
        header["format_version"] == FORMAT_VERSION,
        f"unsupported format_version {header['format_version']!r}",
        "$.header.format_version",
    )
    widgets = _decode_widget_list(header["widgets"], "$.header.widgets")
    by_id = {d.id: d for d in widgets}
    events: List[InteractionEvent] = []
    previous_wall: Optional[int] = None
    for i, (off, line) in enumerate(lines[1:]):
        obj = load_line(off, line)
        event = _decode_event(obj, i, by_id, previous_wall, f"$.events[{i}]")
        previous_wall = event.wall_time
        events.append(event)
    return widgets, events


def load_log(data: bytes) -> Tuple[List[WidgetDescriptor], List[InteractionEvent]]:
    """Detect the format (document vs stream) and parse accordingly.

    A stream log's first line is a complete header object (no "events" key);
    anything else is treated as a session document.
    """
    first_line = data.split(b"\n", 1)[0]
    try:
        head = json.loads(first_line.decode("utf-8"))
        is_stream = isinstance(head, dict) and "widgets" in head and "events" not in head
    except (UnicodeDecodeError, ValueError):
        is_stream = False
    return parse_stream(data) if is_stream else parse_session(data)


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

Geometry = Union[Sequence[AggregateBox], Sequence[TemporalBar], TemporalLayout]


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return s.rstrip("0").rstrip(".") if "." in s else s


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _svg_open(width: float, height: float) -> str:
    w, h = _fmt(width), _fmt(height)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">'
    )


def render_aggregate_svg(
    boxes: Sequence[AggregateBox], width: float, height: float
) -> bytes:
    """One rect per box; untouched widgets render stroke-only."""
    parts = [_svg_open(width, height)]
    for box in boxes:
        fill = box.color if box.filled else "none"
        title = f"{box.widget_id}: {box.tooltip.count} interactions"
        if box.tooltip.last_wall_time is not None:
            title += f", last at {box.tooltip.last_wall_time}"
        parts.append(
            f'<rect data-widget-id="{_esc(box.widget_id)}" x="{_fmt(box.x)}" '
            f'y="{_fmt(box.y)}" width="{_fmt(box.side)}" height="{_fmt(box.side)}" '
            f'fill="{fill}" stroke="{box.color}" stroke-width="1.5">'
            f"<title>{_esc(title)}</title></rect>"
        )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


LABEL_GUTTER = 110.0
ROW_PADDING_FRACTION = 0.2


def _bar_rects(
    bars: Sequence[TemporalBar],
    total_rows: int,
    height: float,
    x_of,
) -> List[str]:
    row_height = height / max(total_rows, 1)
    pad = row_height * ROW_PADDING_FRACTION
    rects = []
    for bar in bars:
        x = x_of(bar.start)
        bar_width = x_of(bar.end) - x
        y = bar.row * row_height + pad / 2
        rects.append(
            f'<rect data-event-seq="{bar.event_seq}" x="{_fmt(x)}" y="{_fmt(y)}" '
            f'width="{_fmt(bar_width)}" height="{_fmt(row_height - pad)}" '
            f'fill="{bar.color}"/>'
        )
    return rects


def render_temporal_svg(
    layout: TemporalLayout, width: float, height: float
) -> bytes:
    """Gantt chart: one rect per bar, row labels down the left margin."""
    total_rows = max(layout.total_rows, 1)
    row_height = height / total_rows
    span = max(max((bar.end for bar in layout.bars), default=1.0), 1e-9)

    def x_of(value: float) -> float:
        return LABEL_GUTTER + (value / span) * (width - LABEL_GUTTER)

    parts = [_svg_open(width, height)]
    labels = list(layout.rows) + (
        ["restore"] if layout.has_restore_markers else []
    )
    for row, label in enumerate(labels):
        ty = (row + 0.65) * row_height
        parts.append(
            f'<text x="4" y="{_fmt(ty)}" font-family="sans-serif" '
            f'font-size="11">{_esc(label)}</text>'
        )
    parts.extend(_bar_rects(layout.bars, total_rows, height, x_of))
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def render_svg(geometry: Geometry, width: float, height: float) -> bytes:
    """Render aggregate boxes or temporal bars; deterministic bytes."""
    if isinstance(geometry, TemporalLayout):
        return render_temporal_svg(geometry, width, height)
    items = list(geometry)
    if not items:
        return (_svg_open(width, height) + "\n</svg>\n").encode("utf-8")
    if isinstance(items[0], AggregateBox):
        return render_aggregate_svg(items, width, height)
    if isinstance(items[0], TemporalBar):
        # Bare bar lists carry no row labels; render unlabeled, full width.
        total_rows = max(bar.row for bar in items) + 1
        span = max(max(bar.end for bar in items), 1e-9)
        parts = [_svg_open(width, height)]
        parts.extend(
            _bar_rects(items, total_rows, height, lambda v: (v / span) * width)
        )
        parts.append("</svg>")
        return ("\n".join(parts) + "\n").encode("utf-8")
    raise TypeError(f"cannot render geometry of type {type(items[0]).__name__}")
