"""Session documents, stream logs, and SVG output."""
from __future__ import annotations

import io
import json
import xml.etree.ElementTree as ET

import pytest

from superprov.core import NumericValue, Session, TextValue, WidgetKind
from superprov.errors import ParseError, SchemaError
from superprov.layout import (
    compute_aggregate_layout,
    compute_temporal_layout,
)
from superprov.persistence import (
    StreamLogWriter,
    load_log,
    parse_session,
    parse_stream,
    render_svg,
    serialize_session,
    serialize_stream,
)
from superprov.recovery import replay, restore_to

from conftest import build_random_session


def _rects(svg: bytes):
    root = ET.fromstring(svg.decode("utf-8"))  # raises on malformed XML
    return root.findall(".//{http://www.w3.org/2000/svg}rect")


# -- session document ------------------------------------------------------------


def test_empty_session_document(session):
    data = serialize_session(session.snapshot(), exported_at=0)
    doc = json.loads(data)
    assert list(doc) == ["format_version", "exported_at", "widgets", "events"]
    assert doc["format_version"] == "1"
    assert doc["events"] == []
    assert len(doc["widgets"]) == 10


def test_round_trip_equality():
    session, _ = build_random_session(seed=70, n_events=250, restore_fraction=0.05)
    snap = session.snapshot()
    widgets, events = parse_session(serialize_session(snap, exported_at=1))
    assert replay(widgets, events) == snap


def test_serialize_parse_serialize_is_canonical():
    session, _ = build_random_session(seed=71, n_events=120, restore_fraction=0.05)
    snap = session.snapshot()
    first = serialize_session(snap, exported_at=42)
    widgets, events = parse_session(first)
    second = serialize_session(replay(widgets, events), exported_at=42)
    assert first == second


def test_identical_logs_serialize_identically():
    a, _ = build_random_session(seed=72, n_events=80)
    b, _ = build_random_session(seed=72, n_events=80)
    assert serialize_session(a.snapshot(), exported_at=7) == serialize_session(
        b.snapshot(), exported_at=7
    )


def test_restore_event_has_no_payload_keys(session):
    session.record_interaction("s1", NumericValue(1), wall_time=1)
    restore_to(session, 0, wall_time=2)
    doc = json.loads(serialize_session(session.snapshot(), exported_at=0))
    interaction, restore = doc["events"]
    assert list(interaction) == ["seq", "widget_id", "value", "wall_time", "kind"]
    assert list(restore) == ["seq", "wall_time", "kind", "restore_target"]


def test_truncated_document_is_parse_error(session):
    data = serialize_session(session.snapshot(), exported_at=0)
    with pytest.raises(ParseError) as excinfo:
        parse_session(data[: len(data) // 2])
    assert excinfo.value.offset is not None


def test_not_utf8_is_parse_error():
    with pytest.raises(ParseError):
        parse_session(b"\xff\xfe{}")


def test_nan_literal_is_parse_error(session):
    session.record_interaction("s1", NumericValue(10), wall_time=1)
    data = serialize_session(session.snapshot(), exported_at=0)
    poisoned = data.replace(b'"value": 10.0', b'"value": NaN')
    assert b"NaN" in poisoned
    with pytest.raises(ParseError):
        parse_session(poisoned)


def test_unknown_version_is_schema_error(session):
    doc = json.loads(serialize_session(session.snapshot(), exported_at=0))
    doc["format_version"] = "999"
    with pytest.raises(SchemaError) as excinfo:
        parse_session(json.dumps(doc).encode())
    assert "format_version" in excinfo.value.path


def test_extra_top_level_key_is_schema_error(session):
    doc = json.loads(serialize_session(session.snapshot(), exported_at=0))
    doc["bonus"] = 1
    with pytest.raises(SchemaError):
        parse_session(json.dumps(doc).encode())


def test_schema_error_paths_point_at_violations(session):
    session.record_interaction("s1", NumericValue(10), wall_time=1)
    base = json.loads(serialize_session(session.snapshot(), exported_at=0))

    gap = json.loads(json.dumps(base))
    gap["events"][0]["seq"] = 5
    with pytest.raises(SchemaError) as excinfo:
        parse_session(json.dumps(gap).encode())
    assert excinfo.value.path == "$.events[0].seq"

    bad_value = json.loads(json.dumps(base))
    bad_value["events"][0]["value"] = {"type": "numeric", "value": 10_000}
    with pytest.raises(SchemaError) as excinfo:
        parse_session(json.dumps(bad_value).encode())
    assert excinfo.value.path == "$.events[0].value"

    bad_widget = json.loads(json.dumps(base))
    bad_widget["events"][0]["widget_id"] = "ghost"
    with pytest.raises(SchemaError) as excinfo:
        parse_session(json.dumps(bad_widget).encode())
    assert excinfo.value.path == "$.events[0].widget_id"


def test_wall_time_regression_is_schema_error(session):
    session.record_interaction("s1", NumericValue(1), wall_time=100)
    session.record_interaction("s1", NumericValue(2), wall_time=200)
    doc = json.loads(serialize_session(session.snapshot(), exported_at=0))
    doc["events"][1]["wall_time"] = 50
    with pytest.raises(SchemaError):
        parse_session(json.dumps(doc).encode())


def test_unicode_text_survives_round_trip(session):
    session.record_interaction("t1", TextValue("héllo 世界 \n\t"), wall_time=1)
    snap = session.snapshot()
    widgets, events = parse_session(serialize_session(snap, exported_at=0))
    assert replay(widgets, events) == snap


def test_coalesced_session_round_trips():
    from conftest import make_standard_session

    session = make_standard_session(coalescing_window_ms=300)
    session.record_interaction("s1", NumericValue(10), wall_time=1000)
    session.record_interaction("s1", NumericValue(20), wall_time=1100)  # coalesced
    session.record_interaction("s2", NumericValue(5), wall_time=2000)
    snap = session.snapshot()
    assert snap.global_count == 2
    widgets, events = parse_session(serialize_session(snap, exported_at=0))
    assert replay(widgets, events) == snap


def test_empty_input_is_parse_error():
    with pytest.raises(ParseError):
        load_log(b"")


# -- stream log -------------------------------------------------------------------


def test_stream_round_trip():
    session, _ = build_random_session(seed=73, n_events=60, restore_fraction=0.05)
    snap = session.snapshot()
    widgets, events = parse_stream(serialize_stream(snap))
    assert replay(widgets, events) == snap


def test_stream_writer_appends_incrementally(session):
    buffer = io.StringIO()
    writer = StreamLogWriter(buffer, session.snapshot().widgets)
    session.record_interaction("s1", NumericValue(1), wall_time=1)
    writer.append(session.snapshot().events[-1])
    session.record_interaction("s2", NumericValue(2), wall_time=2)
    writer.append(session.snapshot().events[-1])
    data = buffer.getvalue().encode()
    widgets, events = parse_stream(data)
    assert replay(widgets, events) == session.snapshot()


def test_stream_bad_line_reports_offset(session):
    data = serialize_stream(session.snapshot())
    broken = data + b'{"seq": not-json\n'
    with pytest.raises(ParseError) as excinfo:
        parse_stream(broken)
    assert excinfo.value.offset >= len(data)


def test_stream_missing_header_is_schema_error(session):
    session.record_interaction("s1", NumericValue(1), wall_time=1)
    data = serialize_stream(session.snapshot())
    headerless = data.split(b"\n", 1)[1]  # drop the header line
    with pytest.raises(SchemaError):
        parse_stream(headerless)


def test_load_log_detects_both_formats():
    session, _ = build_random_session(seed=74, n_events=40)
    snap = session.snapshot()
    doc_widgets, doc_events = load_log(serialize_session(snap, exported_at=0))
    stream_widgets, stream_events = load_log(serialize_stream(snap))
    assert replay(doc_widgets, doc_events) == snap
    assert replay(stream_widgets, stream_events) == snap


# -- svg -------------------------------------------------------------------------


def test_empty_geometry_renders_valid_svg():
    svg = render_svg([], 100, 100)
    assert _rects(svg) == []


def test_aggregate_svg_one_rect_per_box_fill_rule(session):
    session.record_interaction("s1", NumericValue(1), wall_time=1)
    boxes = compute_aggregate_layout(session.snapshot(), 640, 480)
    svg = render_svg(boxes, 640, 480)
    rects = _rects(svg)
    assert len(rects) == len(boxes)
    by_id = {r.get("data-widget-id"): r for r in rects}
    box_s2 = next(b for b in boxes if b.widget_id == "s2")
    assert by_id["s1"].get("fill") == by_id["s1"].get("stroke")
    assert by_id["s2"].get("fill") == "none"
    assert by_id["s2"].get("stroke") == box_s2.color


def test_aggregate_svg_coordinates_match_geometry(session):
    session.record_interaction("s1", NumericValue(1), wall_time=1)
    boxes = compute_aggregate_layout(session.snapshot(), 640, 480)
    rects = _rects(render_svg(boxes, 640, 480))
    for box, rect in zip(boxes, rects):
        assert float(rect.get("x")) == pytest.approx(box.x, abs=0.01)
        assert float(rect.get("y")) == pytest.approx(box.y, abs=0.01)
        assert float(rect.get("width")) == pytest.approx(box.side, abs=0.01)


def test_temporal_svg_one_rect_per_bar():
    session, _ = build_random_session(seed=75, n_events=50, restore_fraction=0.1)
    layout = compute_temporal_layout(session.snapshot())
    svg = render_svg(layout, 960, 400)
    assert len(_rects(svg)) == len(layout.bars)


def test_svg_deterministic(session):
    session.record_interaction("s1", NumericValue(1), wall_time=1)
    boxes = compute_aggregate_layout(session.snapshot(), 640, 480)
    assert render_svg(boxes, 640, 480) == render_svg(boxes, 640, 480)
    layout = compute_temporal_layout(session.snapshot())
    assert render_svg(layout, 960, 300) == render_svg(layout, 960, 300)


def test_svg_escapes_hostile_ids():
    session = Session()
    session.register_widget('a"<&b>', WidgetKind.TEXT_INPUT, TextValue(""))
    session.record_interaction('a"<&b>', TextValue("x"), wall_time=1)
    boxes = compute_aggregate_layout(session.snapshot(), 200, 200)
    rects = _rects(render_svg(boxes, 200, 200))
    assert rects[0].get("data-widget-id") == 'a"<&b>'
