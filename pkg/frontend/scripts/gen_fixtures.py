#!/usr/bin/env python3
"""Record real service responses for the UI test scenario.

Drives the in-process HTTP service through the exact interaction sequence the
vitest suite replays (slider commit, two checkbox commits, restore to seq 0,
navigation) and freezes every response into src/fixtures/session-fixtures.json.
Regenerate after any wire-contract change: python3 scripts/gen_fixtures.py
"""
from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from superprov.service import create_app

VIEWPORT_W, VIEWPORT_H = 720, 200
SCENT_W, SCENT_H = 160, 18

DEMO_WIDGETS = [
    {
        "id": "region",
        "kind": "radio-group",
        "label": "Region",
        "domain": {"type": "options", "options": ["north", "south", "east", "west"]},
        "initial_value": {"type": "selection", "selected": ["north"]},
    },
    {
        "id": "categories",
        "kind": "checkbox-group",
        "label": "Categories",
        "domain": {"type": "options", "options": ["food", "tech", "travel", "books"]},
        "initial_value": {"type": "selection", "selected": []},
    },
    {
        "id": "price",
        "kind": "single-slider",
        "label": "Max price",
        "domain": {"type": "numeric", "low": 0, "high": 500},
        "initial_value": {"type": "numeric", "value": 250},
    },
    {
        "id": "years",
        "kind": "range-slider",
        "label": "Year range",
        "domain": {"type": "numeric", "low": 2000, "high": 2026},
        "initial_value": {"type": "range", "low": 2005, "high": 2020},
    },
    {
        "id": "metric",
        "kind": "single-select",
        "label": "Metric",
        "domain": {"type": "options", "options": ["revenue", "units", "margin"]},
        "initial_value": {"type": "selection", "selected": ["revenue"]},
    },
    {
        "id": "tags",
        "kind": "multi-select",
        "label": "Tags",
        "domain": {"type": "options", "options": ["new", "sale", "eco", "import", "local"]},
        "initial_value": {"type": "selection", "selected": []},
    },
    {
        "id": "search",
        "kind": "text-input",
        "label": "Search",
        "domain": None,
        "initial_value": {"type": "text", "value": ""},
    },
]

# (widget_id, value, wall_time) in UI commit order
SCRIPTED_EVENTS = [
    ("price", {"type": "numeric", "value": 120}, 1_700_000_001_000),
    ("categories", {"type": "selection", "selected": ["food"]}, 1_700_000_002_000),
    ("categories", {"type": "selection", "selected": ["food", "tech"]}, 1_700_000_003_000),
]


def main() -> None:
    client = TestClient(create_app())
    sid = client.post(
        "/api/sessions", json={"coalescing_window_ms": 300}
    ).json()["session_id"]

    widgets = {}
    for spec in DEMO_WIDGETS:
        response = client.post(f"/api/sessions/{sid}/widgets", json=spec)
        response.raise_for_status()
        widgets[spec["id"]] = response.json()

    aggregate_by_count = {}
    temporal_by_count = {}
    snapshot_by_count = {}
    scent_by_count = {}

    def capture(count: int) -> None:
        aggregate_by_count[str(count)] = client.get(
            f"/api/sessions/{sid}/layout/aggregate?width={VIEWPORT_W}&height={VIEWPORT_H}"
        ).json()["boxes"]
        temporal_by_count[str(count)] = client.get(
            f"/api/sessions/{sid}/layout/temporal?mode=sequence"
        ).json()
        snapshot_by_count[str(count)] = client.get(
            f"/api/sessions/{sid}/snapshot"
        ).json()

    def capture_scent(count: int, widget_id: str) -> None:
        scent_by_count[f"{count}:{widget_id}"] = client.get(
            f"/api/sessions/{sid}/widgets/{widget_id}/scent?width={SCENT_W}&height={SCENT_H}"
        ).json()["bars"]

    capture(0)

    record_responses = []
    for widget_id, value, wall_time in SCRIPTED_EVENTS:
        response = client.post(
            f"/api/sessions/{sid}/events",
            json={"widget_id": widget_id, "value": value, "wall_time": wall_time},
        )
        response.raise_for_status()
        record_responses.append(
            {"widget_id": widget_id, "value": value, "response": response.json()}
        )
        capture(response.json()["snapshot"]["global_count"])

    capture_scent(3, "categories")

    restore = client.post(
        f"/api/sessions/{sid}/restore",
        json={"seq": 0, "wall_time": 1_700_000_004_000},
    )
    restore.raise_for_status()
    restore_responses = [{"seq": 0, "response": restore.json()}]
    capture(restore.json()["snapshot"]["global_count"])
    capture_scent(4, "categories")

    export_document = client.get(
        f"/api/sessions/{sid}/export?exported_at=1700000005000"
    ).json()

    fixtures = {
        "session_id": sid,
        "widgets": widgets,
        "record_responses": record_responses,
        "restore_responses": restore_responses,
        "aggregate_by_count": aggregate_by_count,
        "temporal_by_count": temporal_by_count,
        "snapshot_by_count": snapshot_by_count,
        "scent_by_count": scent_by_count,
        "export_document": export_document,
    }
    out_path = Path(__file__).resolve().parents[1] / "src" / "fixtures"
    out_path.mkdir(parents=True, exist_ok=True)
    target = out_path / "session-fixtures.json"
    target.write_text(json.dumps(fixtures, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
