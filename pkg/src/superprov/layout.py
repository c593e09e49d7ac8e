"""Pure geometry computation for the aggregate overview, the Gantt timeline, and scent bars.

Everything here is a deterministic function of an immutable snapshot plus
parameters; no pixels are drawn (see :mod:`superprov.persistence` for SVG).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from .core import (
    DEFAULT_PALETTE,
    EventKind,
    ProvenanceSnapshot,
    ValueDomain,
)
from .errors import InvalidViewport, UnknownKey

DEFAULT_A_MIN = 144.0
DEFAULT_A_MAX = 1600.0
DEFAULT_GUTTER = 8.0
#: Marker bars for restore meta-events sit in a dedicated bottom row.
RESTORE_MARKER_COLOR = "#444444"
#: Pseudo widget id carried by restore marker bars (real ids are non-empty).
RESTORE_MARKER_ID = ""

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
SEQUENCE_MODE = "sequence"
WALL_CLOCK_MODE = "wall_clock"


def assign_color(registration_index: int, palette: Sequence[str] = DEFAULT_PALETTE) -> str:
    """Deterministic palette color for a registration index (cycles modulo)."""
    if registration_index < 0:
        raise ValueError("registration_index must be >= 0")
    return palette[registration_index % len(palette)]


# ---------------------------------------------------------------------------
# Aggregate View
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoxTooltip:
    widget_id: str
    count: int
    last_wall_time: Optional[int]


@dataclass(frozen=True)
class AggregateBox:
    """One square box: area encodes frequency, position encodes recency order."""

    widget_id: str
    order: int
    x: float
    y: float
    side: float
    color: str
    filled: bool
    tooltip: BoxTooltip


def compute_aggregate_layout(
    snapshot: ProvenanceSnapshot,
    viewport_width: float,
    viewport_height: float,
    a_min: float = DEFAULT_A_MIN,
    a_max: float = DEFAULT_A_MAX,
    *,
    palette: Sequence[str] = DEFAULT_PALETTE,
    gutter: float = DEFAULT_GUTTER,
) -> Tuple[AggregateBox, ...]:
    """Boxes ordered most-recent first, then untouched widgets in registration order.

    Box area is ``a_min + (a_max - a_min) * count / max_count`` over used
    widgets; untouched widgets sit at ``a_min`` unfilled. Boxes flow left to
    right and wrap at the viewport width.
    """
    if viewport_width <= 0 or viewport_height <= 0:
        raise InvalidViewport(
            f"viewport must be positive, got {viewport_width}x{viewport_height}"
        )
    if not a_min < a_max:
        raise ValueError(f"a_min ({a_min}) must be < a_max ({a_max})")
    if a_min <= 0:
        raise ValueError("a_min must be positive")

    used = [d for d in snapshot.widgets if snapshot.per_widget[d.id].count > 0]
    used.sort(key=lambda d: -(snapshot.per_widget[d.id].last_seq or 0))
    unused = [d for d in snapshot.widgets if snapshot.per_widget[d.id].count == 0]
    ordered = used + unused

    max_count = max((snapshot.per_widget[d.id].count for d in used), default=0)

    boxes = []
    x = 0.0
    y = 0.0
    row_height = 0.0
    for order, descriptor in enumerate(ordered):
        stats = snapshot.per_widget[descriptor.id]
        if stats.count > 0:
            area = a_min + (a_max - a_min) * stats.count / max_count
        else:
            area = a_min
        side = math.sqrt(area)
        if x > 0 and x + side > viewport_width:
            x = 0.0
            y += row_height + gutter
            row_height = 0.0
        boxes.append(
            AggregateBox(
                widget_id=descriptor.id,
                order=order,
                x=x,
                y=y,
                side=side,
                color=palette[descriptor.color_index % len(palette)],
                filled=stats.count > 0,
                tooltip=BoxTooltip(
                    widget_id=descriptor.id,
                    count=stats.count,
                    last_wall_time=stats.last_wall_time,
                ),
            )
        )
        x += side + gutter
        row_height = max(row_height, side)
    return tuple(boxes)


# ---------------------------------------------------------------------------
# Temporal (Gantt) View
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TemporalBar:
    """One bar per logged event; restore markers use RESTORE_MARKER_ID."""

    widget_id: str
    row: int
    start: float
    end: float
    color: str
    event_seq: int


@dataclass(frozen=True)
class TemporalLayout:
    rows: Tuple[str, ...]
    bars: Tuple[TemporalBar, ...]

    @property
    def restore_row(self) -> int:
        return len(self.rows)

    @property
    def has_restore_markers(self) -> bool:
        return any(b.widget_id == RESTORE_MARKER_ID for b in self.bars)

    @property
    def total_rows(self) -> int:
        return len(self.rows) + (1 if self.has_restore_markers else 0)


def compute_temporal_layout(
    snapshot: ProvenanceSnapshot,
    mode: str = SEQUENCE_MODE,
    *,
    palette: Sequence[str] = DEFAULT_PALETTE,
    min_wall_width_ms: float = 1.0,
) -> TemporalLayout:
    """One row per widget (registration order), one bar per event.

    In sequence mode each bar spans from its seq to the next event's seq
    (the last event extends one unit), so bars tile [0, N) exactly. In
    wall-clock mode a bar spans to the next event's wall time, the last event
    gets ``min_wall_width_ms``, and degenerate equal-timestamp bars are swept
    per row to keep them disjoint with positive width.
    """
    if mode not in (SEQUENCE_MODE, WALL_CLOCK_MODE):
        raise ValueError(f"mode must be {SEQUENCE_MODE!r} or {WALL_CLOCK_MODE!r}")

    rows = tuple(d.id for d in snapshot.widgets)
    row_index = {widget_id: i for i, widget_id in enumerate(rows)}
    color_of = {
        d.id: palette[d.color_index % len(palette)] for d in snapshot.widgets
    }
    restore_row = len(rows)

    events = snapshot.events
    bars = []
    for event in events:
        if mode == SEQUENCE_MODE:
            start = float(event.seq)
            end = float(event.seq + 1)
        else:
            start = float(event.wall_time)
            if event.seq + 1 < len(events):
                end = float(events[event.seq + 1].wall_time)
            else:
                end = start + min_wall_width_ms
        if event.kind is EventKind.RESTORE:
            bars.append(
                TemporalBar(
                    widget_id=RESTORE_MARKER_ID,
                    row=restore_row,
                    start=start,
                    end=end,
                    color=RESTORE_MARKER_COLOR,
                    event_seq=event.seq,
                )
            )
        else:
            bars.append(
                TemporalBar(
                    widget_id=event.widget_id,  # type: ignore[arg-type]
                    row=row_index[event.widget_id],
                    start=start,
                    end=end,
                    color=color_of[event.widget_id],
                    event_seq=event.seq,
                )
            )

    if mode == WALL_CLOCK_MODE:
        # Repair zero-width bars (events sharing a millisecond): clamp each
        # bar behind its row predecessor and give it at least the min width.
        swept = []
        last_end: Dict[int, float] = {}
        for bar in bars:
            start = max(bar.start, last_end.get(bar.row, bar.start))
            end = max(bar.end, start + min_wall_width_ms)
            last_end[bar.row] = end
            swept.append(replace(bar, start=start, end=end))
        bars = swept

    return TemporalLayout(rows=rows, bars=tuple(bars))


# ---------------------------------------------------------------------------
# Scent bars
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScentBar:
    key: str
    offset: float
    length: float
    color: str


@dataclass(frozen=True)
class ScentGuidance:
    """Aggregate value per key plus the value domain the keys came from."""

    values: Mapping[str, float]
    domain: ValueDomain = None


@dataclass(frozen=True)
class ScentEncoding:
    guidance: ScentGuidance
    orientation: str
    position_domain: Tuple[str, ...]
    color_domain: Tuple[float, float]
    color_map: Callable[[float], str]
    width: float
    height: float
    bar_keys: Optional[Tuple[str, ...]] = None


def compute_scent_bars(encoding: ScentEncoding) -> Tuple[ScentBar, ...]:
    """Bar lengths normalized against the maximum value over the position domain.

    The long axis follows the orientation (width when horizontal); offsets
    place bars along the secondary dimension in ``bar_keys`` order (position
    domain order by default, trailing slots for keys bar_keys omits).
    """
    if encoding.orientation not in (HORIZONTAL, VERTICAL):
        raise ValueError(f"orientation must be {HORIZONTAL!r} or {VERTICAL!r}")
    keys = tuple(encoding.position_domain)
    if not keys:
        raise ValueError("position_domain must not be empty")
    if len(set(keys)) != len(keys):
        raise ValueError("position_domain keys must be unique")
    lo, hi = encoding.color_domain
    if lo > hi:
        raise ValueError(f"color_domain interval is empty: [{lo}, {hi}]")
    if encoding.width <= 0 or encoding.height <= 0:
        raise ValueError("scent canvas dimensions must be positive")

    bar_keys = tuple(encoding.bar_keys) if encoding.bar_keys is not None else keys
    key_set = set(keys)
    for key in bar_keys:
        if key not in key_set:
            raise UnknownKey(key)
    bar_key_set = set(bar_keys)
    slot_order = list(bar_keys) + [k for k in keys if k not in bar_key_set]
    slot_of = {key: i for i, key in enumerate(slot_order)}

    if encoding.orientation == HORIZONTAL:
        axis_extent, secondary_extent = encoding.width, encoding.height
    else:
        axis_extent, secondary_extent = encoding.height, encoding.width
    slot = secondary_extent / len(slot_order)

    values = {k: float(encoding.guidance.values.get(k, 0.0)) for k in keys}
    max_value = max(values.values(), default=0.0)

    bars = []
    for key in keys:
        value = values[key]
        length = 0.0 if max_value <= 0 else axis_extent * max(value, 0.0) / max_value
        length = min(max(length, 0.0), axis_extent)
        if hi > lo:
            normalized = min(max((value - lo) / (hi - lo), 0.0), 1.0)
        else:
            normalized = 1.0 if value >= hi else 0.0
        bars.append(
            ScentBar(
                key=key,
                offset=slot_of[key] * slot,
                length=length,
                color=encoding.color_map(normalized),
            )
        )
    return tuple(bars)


def linear_color_map(start_hex: str, end_hex: str) -> Callable[[float], str]:
    """RGB interpolation between two hex colors, for scent color maps."""
    start = _parse_hex(start_hex)
    end = _parse_hex(end_hex)

    def color_map(t: float) -> str:
        t = min(max(t, 0.0), 1.0)
        rgb = tuple(round(s + (e - s) * t) for s, e in zip(start, end))
        return "#{:02x}{:02x}{:02x}".format(*rgb)

    return color_map


def _parse_hex(color: str) -> Tuple[int, int, int]:
    color = color.lstrip("#")
    if len(color) != 6:
        raise ValueError(f"expected #rrggbb color, got {color!r}")
    return int(color[0:2], 16), int(color[2:4], 16), int(color[4:6], 16)
