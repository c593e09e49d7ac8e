#!/usr/bin/env python3
"""Regenerate sample/session.json, a small deterministic exported session."""
from __future__ import annotations

from pathlib import Path

import superprov as sp


def main() -> None:
    session = sp.create_session()
    session.register_widget(
        "region",
        sp.WidgetKind.RADIO_GROUP,
        sp.SelectionValue(frozenset({"north"})),
        label="Region",
        domain=sp.OptionsDomain(("north", "south", "east", "west")),
    )
    session.register_widget(
        "price",
        sp.WidgetKind.SINGLE_SLIDER,
        sp.NumericValue(250),
        label="Max price",
        domain=sp.NumericDomain(0, 500),
    )
    session.register_widget(
        "years",
        sp.WidgetKind.RANGE_SLIDER,
        sp.RangeValue(2005, 2020),
        label="Year range",
        domain=sp.NumericDomain(2000, 2026),
    )
    session.register_widget(
        "categories",
        sp.WidgetKind.CHECKBOX_GROUP,
        sp.SelectionValue(frozenset()),
        label="Categories",
        domain=sp.OptionsDomain(("food", "tech", "travel", "books")),
    )
    session.register_widget(
        "search", sp.WidgetKind.TEXT_INPUT, sp.TextValue(""), label="Search"
    )

    t = 1_700_000_000_000
    session.record_interaction("price", sp.NumericValue(120), wall_time=t)
    session.record_interaction(
        "categories", sp.SelectionValue(frozenset({"food"})), wall_time=t + 2_000
    )
    session.record_interaction(
        "categories", sp.SelectionValue(frozenset({"food", "tech"})), wall_time=t + 5_000
    )
    session.record_interaction("price", sp.NumericValue(80), wall_time=t + 9_000)
    session.record_interaction(
        "years", sp.RangeValue(2010, 2022), wall_time=t + 12_000
    )
    session.record_interaction("search", sp.TextValue("laptops"), wall_time=t + 20_000)
    sp.restore_to(session, 2, wall_time=t + 30_000)
    session.record_interaction(
        "region", sp.SelectionValue(frozenset({"east"})), wall_time=t + 33_000
    )

    data = sp.serialize_session(session.snapshot(), exported_at=t + 60_000)
    target = Path(__file__).resolve().parent / "session.json"
    target.write_bytes(data)
    print(f"wrote {target} ({session.snapshot().global_count} events)")


if __name__ == "__main__":
    main()
