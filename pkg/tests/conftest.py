"""Shared fixtures: standard widget sets, random log generation, suite timing."""
from __future__ import annotations

import random
import time
from typing import Tuple

import pytest

from superprov.core import (
    NumericDomain,
    NumericValue,
    OptionsDomain,
    RangeValue,
    SelectionValue,
    Session,
    TextValue,
    WidgetKind,
)
from superprov.recovery import restore_to

_SUITE_START = time.monotonic()
SUITE_BUDGET_SECONDS = 120.0


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.monotonic() - _SUITE_START
    status = "PASS" if elapsed < SUITE_BUDGET_SECONDS else "FAIL"
    print(
        f"\n[ACCEPTANCE] full primary suite runtime: {elapsed:.1f}s "
        f"(budget {SUITE_BUDGET_SECONDS:.0f}s): {status}"
    )
    if elapsed >= SUITE_BUDGET_SECONDS and exitstatus == 0:
        session.exitstatus = 1


# Ten widgets covering all four value kinds (and all seven widget kinds).
STANDARD_WIDGETS = (
    ("s1", WidgetKind.SINGLE_SLIDER, NumericDomain(0, 100), NumericValue(50)),
    ("s2", WidgetKind.SINGLE_SLIDER, NumericDomain(-50, 50), NumericValue(0)),
    ("r1", WidgetKind.RANGE_SLIDER, NumericDomain(0, 100), RangeValue(20, 80)),
    ("r2", WidgetKind.RANGE_SLIDER, NumericDomain(0, 10), RangeValue(0, 10)),
    (
        "c1",
        WidgetKind.CHECKBOX_GROUP,
        OptionsDomain(("a", "b", "c", "d")),
        SelectionValue(frozenset()),
    ),
    (
        "m1",
        WidgetKind.MULTI_SELECT,
        OptionsDomain(("p", "q", "r", "s", "t")),
        SelectionValue(frozenset({"p"})),
    ),
    (
        "g1",
        WidgetKind.RADIO_GROUP,
        OptionsDomain(("x", "y", "z")),
        SelectionValue(frozenset({"x"})),
    ),
    (
        "d1",
        WidgetKind.SINGLE_SELECT,
        OptionsDomain(("one", "two", "three")),
        SelectionValue(frozenset({"one"})),
    ),
    ("t1", WidgetKind.TEXT_INPUT, None, TextValue("")),
    ("t2", WidgetKind.TEXT_INPUT, None, TextValue("start")),
)

_NUMERIC_GRID = [0.0, 5.0, 10.0, 25.0, 33.0, 50.0, 66.0, 75.0, 90.0, 100.0]
_WORDS = ["alpha", "beta", "gamma", "", "x y z", "naïve", "重置", "tab\there"]


def make_standard_session(**kwargs) -> Session:
    session = Session(**kwargs)
    for widget_id, kind, domain, initial in STANDARD_WIDGETS:
        session.register_widget(widget_id, kind, initial, domain=domain)
    return session


def random_value(rng: random.Random, kind: WidgetKind, domain):
    if kind is WidgetKind.SINGLE_SLIDER:
        if rng.random() < 0.7:
            raw = rng.choice(_NUMERIC_GRID)
        else:
            raw = round(rng.uniform(0, 100), 2)
        span = domain.high - domain.low
        return NumericValue(domain.low + span * raw / 100.0)
    if kind is WidgetKind.RANGE_SLIDER:
        span = domain.high - domain.low
        a, b = sorted(rng.sample(_NUMERIC_GRID, 2))
        return RangeValue(domain.low + span * a / 100.0, domain.low + span * b / 100.0)
    if kind in (WidgetKind.RADIO_GROUP, WidgetKind.SINGLE_SELECT):
        return SelectionValue(frozenset({rng.choice(domain.options)}))
    if kind in (WidgetKind.CHECKBOX_GROUP, WidgetKind.MULTI_SELECT):
        size = rng.randrange(0, len(domain.options) + 1)
        return SelectionValue(frozenset(rng.sample(domain.options, size)))
    return TextValue(rng.choice(_WORDS) + (str(rng.randrange(100)) if rng.random() < 0.5 else ""))


def build_random_session(
    seed: int,
    n_events: int = 1000,
    restore_fraction: float = 0.0,
    start_wall: int = 1_700_000_000_000,
) -> Tuple[Session, random.Random]:
    """Drive a standard session with seeded random interactions.

    Wall times mostly advance but sometimes repeat or regress (the engine
    clamps regressions). restore_fraction > 0 mixes in restore meta-events.
    """
    rng = random.Random(seed)
    session = make_standard_session()
    descriptors = {w[0]: (w[1], w[2]) for w in STANDARD_WIDGETS}
    wall = start_wall
    recorded = 0
    while recorded < n_events:
        wall += rng.choice([-40, 0, 0, 1, 2, 7, 150])
        if restore_fraction > 0 and len(session) > 0 and rng.random() < restore_fraction:
            target = rng.randrange(len(session))
            restore_to(session, target, wall_time=wall)
        else:
            widget_id = rng.choice(list(descriptors))
            kind, domain = descriptors[widget_id]
            session.record_interaction(
                widget_id, random_value(rng, kind, domain), wall_time=wall
            )
        recorded += 1
    return session, rng


@pytest.fixture
def session() -> Session:
    return make_standard_session()
