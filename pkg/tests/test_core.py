"""Registry, ingestion, records, and snapshot behavior."""
from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superprov.core import (
    DEFAULT_PALETTE,
    EventKind,
    NumericDomain,
    NumericValue,
    OptionsDomain,
    RangeValue,
    SelectionValue,
    Session,
    TextValue,
    WidgetKind,
    widget_stats,
)
from superprov.errors import (
    DuplicateWidgetId,
    InvalidInitialValue,
    InvalidValue,
    UnknownWidgetId,
)

from conftest import STANDARD_WIDGETS, build_random_session, make_standard_session
from oracles import (
    brute_numeric_minmax,
    brute_per_widget_counts,
    brute_range_pairs,
    brute_selection_counts,
)


# -- registration -------------------------------------------------------------


def test_first_registration_gets_index_zero():
    session = Session()
    d = session.register_widget(
        "age", WidgetKind.SINGLE_SLIDER, NumericValue(30), domain=NumericDomain(0, 100)
    )
    assert d.registration_index == 0
    assert d.color_index == 0


def test_duplicate_id_rejected():
    session = Session()
    session.register_widget(
        "age", WidgetKind.SINGLE_SLIDER, NumericValue(30), domain=NumericDomain(0, 100)
    )
    with pytest.raises(DuplicateWidgetId):
        session.register_widget(
            "age", WidgetKind.SINGLE_SLIDER, NumericValue(1), domain=NumericDomain(0, 100)
        )


def test_eleventh_widget_cycles_palette():
    session = make_standard_session()
    d = session.register_widget(
        "extra", WidgetKind.TEXT_INPUT, TextValue("")
    )
    assert d.registration_index == 10
    assert d.color_index == 10 % len(DEFAULT_PALETTE) == 0


def test_registration_indices_follow_order(session):
    snap = session.snapshot()
    for i, d in enumerate(snap.widgets):
        assert d.registration_index == i
        assert d.color_index == i % len(DEFAULT_PALETTE)


@pytest.mark.parametrize(
    "kind,domain,value",
    [
        (WidgetKind.SINGLE_SLIDER, NumericDomain(0, 10), NumericValue(11)),
        (WidgetKind.RANGE_SLIDER, NumericDomain(0, 10), RangeValue(5, 3)),
        (WidgetKind.RANGE_SLIDER, NumericDomain(0, 10), RangeValue(-1, 3)),
        (WidgetKind.RADIO_GROUP, OptionsDomain(("x", "y")), SelectionValue(frozenset())),
        (
            WidgetKind.RADIO_GROUP,
            OptionsDomain(("x", "y")),
            SelectionValue(frozenset({"x", "y"})),
        ),
        (
            WidgetKind.MULTI_SELECT,
            OptionsDomain(("x", "y")),
            SelectionValue(frozenset({"nope"})),
        ),
        (WidgetKind.TEXT_INPUT, None, NumericValue(3)),
    ],
)
def test_invalid_initial_values_rejected(kind, domain, value):
    session = Session()
    with pytest.raises(InvalidInitialValue):
        session.register_widget("w", kind, value, domain=domain)


def test_kind_domain_mismatch_rejected():
    session = Session()
    with pytest.raises(InvalidInitialValue):
        session.register_widget(
            "w", WidgetKind.SINGLE_SLIDER, NumericValue(1), domain=OptionsDomain(("a",))
        )
    with pytest.raises(InvalidInitialValue):
        session.register_widget("t", WidgetKind.TEXT_INPUT, TextValue(""), domain=NumericDomain(0, 1))


# -- ingestion ----------------------------------------------------------------


def test_first_event_gets_seq_zero(session):
    assert session.record_interaction("s1", NumericValue(10), wall_time=1) == 0


def test_sequences_are_dense(session):
    seqs = [
        session.record_interaction("s1", NumericValue(v), wall_time=v)
        for v in (1, 2, 3)
    ]
    assert seqs == [0, 1, 2]


def test_unregistered_widget_rejected(session):
    with pytest.raises(UnknownWidgetId):
        session.record_interaction("ghost", NumericValue(1), wall_time=1)


def test_invalid_value_rejected(session):
    with pytest.raises(InvalidValue):
        session.record_interaction("s1", NumericValue(999), wall_time=1)
    with pytest.raises(InvalidValue):
        session.record_interaction("g1", SelectionValue(frozenset({"x", "y"})), wall_time=1)


def test_clock_regression_clamps_not_errors(session):
    session.record_interaction("s1", NumericValue(1), wall_time=1000)
    seq = session.record_interaction("s1", NumericValue(2), wall_time=400)
    snap = session.snapshot()
    assert snap.events[seq].wall_time == 1000


def test_non_finite_values_rejected(session):
    for bad in (float("nan"), float("inf"), float("-inf")):
        with pytest.raises(InvalidValue):
            session.record_interaction("s1", NumericValue(bad), wall_time=1)
    with pytest.raises(InvalidValue):
        session.record_interaction(
            "r1", RangeValue(float("nan"), float("nan")), wall_time=1
        )
    with pytest.raises(ValueError):
        NumericDomain(0, float("inf"))


def test_text_stored_verbatim(session):
    weird = "  tabs\tand\nnewlines و unicode  "
    session.record_interaction("t1", TextValue(weird), wall_time=1)
    snap = session.snapshot()
    assert snap.events[0].value == TextValue(weird)


# -- coalescing ---------------------------------------------------------------


def test_coalescing_replaces_tail_without_new_seq():
    session = make_standard_session(coalescing_window_ms=300)
    s0 = session.record_interaction("s1", NumericValue(10), wall_time=1000)
    s1 = session.record_interaction("s1", NumericValue(20), wall_time=1200)
    assert s0 == s1 == 0
    snap = session.snapshot()
    assert snap.global_count == 1
    assert snap.events[0].value == NumericValue(20)
    assert snap.events[0].wall_time == 1200


def test_coalescing_window_expires():
    session = make_standard_session(coalescing_window_ms=300)
    session.record_interaction("s1", NumericValue(10), wall_time=1000)
    seq = session.record_interaction("s1", NumericValue(20), wall_time=1500)
    assert seq == 1


def test_coalescing_broken_by_other_widget():
    session = make_standard_session(coalescing_window_ms=300)
    session.record_interaction("s1", NumericValue(10), wall_time=1000)
    session.record_interaction("s2", NumericValue(0), wall_time=1100)
    seq = session.record_interaction("s1", NumericValue(20), wall_time=1150)
    assert seq == 2
    assert session.snapshot().global_count == 3


def test_coalescing_updates_record_statistics():
    session = make_standard_session(coalescing_window_ms=300)
    session.record_interaction("s1", NumericValue(90), wall_time=1000)
    session.record_interaction("s1", NumericValue(10), wall_time=1100)
    record = widget_stats(session.snapshot(), "s1").record
    # the coalesced 90 never happened as far as statistics are concerned
    assert record.observed_min == 10
    assert record.observed_max == 10


# -- snapshots ----------------------------------------------------------------


def test_fresh_session_snapshot(session):
    snap = session.snapshot()
    assert snap.global_count == 0
    assert all(stats.count == 0 for stats in snap.per_widget.values())


def test_counts_by_widget(session):
    for v in (1, 2, 3, 4, 5):
        session.record_interaction("s1", NumericValue(v), wall_time=v)
    for v in (1, 2, 3):
        session.record_interaction("s2", NumericValue(v), wall_time=10 + v)
    snap = session.snapshot()
    assert snap.per_widget["s1"].count == 5
    assert snap.per_widget["s2"].count == 3
    assert snap.global_count == 8


def test_snapshot_is_immutable_under_later_mutations(session):
    session.record_interaction("s1", NumericValue(1), wall_time=1)
    old = session.snapshot()
    session.record_interaction("s1", NumericValue(2), wall_time=2)
    session.record_interaction("s2", NumericValue(3), wall_time=3)
    assert old.global_count == 1
    assert old.per_widget["s1"].count == 1
    assert old.per_widget["s2"].count == 0
    assert old == old


def test_widget_stats_unknown_id(session):
    with pytest.raises(UnknownWidgetId):
        widget_stats(session.snapshot(), "ghost")


# -- kind-specific records ------------------------------------------------------


def test_numeric_min_max(session):
    for v in (10, 30, 20):
        session.record_interaction("s1", NumericValue(v), wall_time=v)
    record = widget_stats(session.snapshot(), "s1").record
    assert record.observed_min == 10
    assert record.observed_max == 30


def test_selection_counts_match_item_by_item_replay(session):
    # select a; select b; unselect a
    session.record_interaction("c1", SelectionValue(frozenset({"a"})), wall_time=1)
    session.record_interaction("c1", SelectionValue(frozenset({"a", "b"})), wall_time=2)
    session.record_interaction("c1", SelectionValue(frozenset({"b"})), wall_time=3)
    snap = session.snapshot()
    record = widget_stats(snap, "c1").record

    descriptor = snap.descriptor("c1")
    oracle_selection, oracle_interaction = brute_selection_counts(snap.events, descriptor)
    assert oracle_selection["a"] == 1 and oracle_interaction["a"] == 2
    assert oracle_selection["b"] == 1 and oracle_interaction["b"] == 1

    assert dict(record.selection_counts) == oracle_selection
    assert dict(record.interaction_counts) == oracle_interaction


def test_range_pair_tallies(session):
    for low, high in ((2, 8), (4, 6), (2, 8)):
        session.record_interaction("r2", RangeValue(low, high), wall_time=1)
    snap = session.snapshot()
    record = widget_stats(snap, "r2").record

    oracle = brute_range_pairs(snap.events, "r2")
    assert oracle == {(2.0, 8.0): 2, (4.0, 6.0): 1}
    assert dict(record.pair_counts) == oracle
    assert (record.domain_low, record.domain_high) == (0.0, 10.0)


def test_record_events_match_widget_events(session):
    session.record_interaction("s1", NumericValue(1), wall_time=1)
    session.record_interaction("c1", SelectionValue(frozenset({"a"})), wall_time=2)
    session.record_interaction("s1", NumericValue(2), wall_time=3)
    snap = session.snapshot()
    record = widget_stats(snap, "s1").record
    assert [e.seq for e in record.events] == [0, 2]


# -- invariants on random logs ---------------------------------------------------


def test_oracle_equivalence_on_random_log():
    session, _ = build_random_session(seed=7, n_events=1200)
    snap = session.snapshot()
    widget_ids = [w[0] for w in STANDARD_WIDGETS]
    counts = brute_per_widget_counts(snap.events, widget_ids)
    for widget_id in widget_ids:
        stats = snap.per_widget[widget_id]
        assert stats.count == counts[widget_id]
        descriptor = snap.descriptor(widget_id)
        kind = descriptor.kind
        if kind is WidgetKind.SINGLE_SLIDER:
            assert (
                stats.record.observed_min,
                stats.record.observed_max,
            ) == brute_numeric_minmax(snap.events, widget_id)
        elif kind is WidgetKind.RANGE_SLIDER:
            assert dict(stats.record.pair_counts) == brute_range_pairs(
                snap.events, widget_id
            )
        elif kind in (
            WidgetKind.RADIO_GROUP,
            WidgetKind.CHECKBOX_GROUP,
            WidgetKind.SINGLE_SELECT,
            WidgetKind.MULTI_SELECT,
        ):
            sel, inter = brute_selection_counts(snap.events, descriptor)
            assert dict(stats.record.selection_counts) == sel
            assert dict(stats.record.interaction_counts) == inter


@settings(max_examples=40, deadline=None)
@given(
    steps=st.lists(
        st.tuples(st.sampled_from(["s1", "s2", "t1"]), st.integers(-5, 50)),
        max_size=60,
    )
)
def test_dense_seq_and_monotone_wall_time(steps):
    session = make_standard_session()
    wall = 1000
    for widget_id, delta in steps:
        wall += delta
        value = NumericValue(1) if widget_id.startswith("s") else TextValue("x")
        session.record_interaction(widget_id, value, wall_time=wall)
    snap = session.snapshot()
    assert [e.seq for e in snap.events] == list(range(len(steps)))
    assert all(
        snap.events[i].wall_time <= snap.events[i + 1].wall_time
        for i in range(len(snap.events) - 1)
    )
    assert snap.global_count == len(steps)
    interaction_total = sum(
        1 for e in snap.events if e.kind is EventKind.INTERACTION
    )
    assert sum(s.count for s in snap.per_widget.values()) == interaction_total
