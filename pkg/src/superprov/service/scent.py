"""Demo scent policy: derive bar guidance from a widget's provenance record.

Selection kinds map per-item interaction counts onto their option list;
slider kinds histogram observed values (range sliders count bin coverage)
over the numeric domain. Text inputs have no positional domain, so no bars.
"""
from __future__ import annotations

from typing import Optional, Tuple

from ..core import (
    NumericDomain,
    NumericRecord,
    ProvenanceSnapshot,
    RangedRecord,
    SelectionRecord,
    widget_stats,
)
from ..layout import (
    HORIZONTAL,
    ScentBar,
    ScentEncoding,
    ScentGuidance,
    compute_scent_bars,
    linear_color_map,
)

DEFAULT_BINS = 10
SCENT_LOW_COLOR = "#deebf7"
SCENT_HIGH_COLOR = "#3182bd"


def _bin_label(domain: NumericDomain, bins: int, index: int) -> str:
    step = (domain.high - domain.low) / bins
    lo = domain.low + index * step
    hi = domain.high if index == bins - 1 else lo + step
    return f"{lo:g}..{hi:g}"


def _bin_of(domain: NumericDomain, bins: int, value: float) -> int:
    if domain.high == domain.low:
        return 0
    fraction = (value - domain.low) / (domain.high - domain.low)
    return min(int(fraction * bins), bins - 1)


def scent_encoding_for(
    snapshot: ProvenanceSnapshot,
    widget_id: str,
    *,
    orientation: str = HORIZONTAL,
    width: float = 160.0,
    height: float = 24.0,
    bins: int = DEFAULT_BINS,
) -> Optional[ScentEncoding]:
    """Build a scent encoding for one widget, or None when it has no domain."""
    descriptor = snapshot.descriptor(widget_id)
    record = widget_stats(snapshot, widget_id).record
    if isinstance(descriptor.domain, NumericDomain) and (
        descriptor.domain.high == descriptor.domain.low
    ):
        bins = 1  # degenerate domain collapses to a single bin

    if isinstance(record, SelectionRecord):
        keys = tuple(descriptor.domain.options)  # type: ignore[union-attr]
        values = {k: float(record.interaction_counts.get(k, 0)) for k in keys}
    elif isinstance(record, NumericRecord):
        domain = descriptor.domain
        assert isinstance(domain, NumericDomain)
        keys = tuple(_bin_label(domain, bins, i) for i in range(bins))
        values = {k: 0.0 for k in keys}
        for event in record.events:
            values[keys[_bin_of(domain, bins, event.value.value)]] += 1.0  # type: ignore[union-attr]
    elif isinstance(record, RangedRecord):
        domain = descriptor.domain
        assert isinstance(domain, NumericDomain)
        keys = tuple(_bin_label(domain, bins, i) for i in range(bins))
        values = {k: 0.0 for k in keys}
        for (low, high), count in record.pair_counts.items():
            first = _bin_of(domain, bins, low)
            last = _bin_of(domain, bins, high)
            for i in range(first, last + 1):
                values[keys[i]] += float(count)
    else:
        return None

    max_value = max(values.values(), default=0.0)
    return ScentEncoding(
        guidance=ScentGuidance(values=values, domain=descriptor.domain),
        orientation=orientation,
        position_domain=keys,
        color_domain=(0.0, max(max_value, 1.0)),
        color_map=linear_color_map(SCENT_LOW_COLOR, SCENT_HIGH_COLOR),
        width=width,
        height=height,
    )


def scent_bars_for(
    snapshot: ProvenanceSnapshot,
    widget_id: str,
    *,
    orientation: str = HORIZONTAL,
    width: float = 160.0,
    height: float = 24.0,
    bins: int = DEFAULT_BINS,
) -> Tuple[ScentBar, ...]:
    encoding = scent_encoding_for(
        snapshot,
        widget_id,
        orientation=orientation,
        width=width,
        height=height,
        bins=bins,
    )
    if encoding is None:
        return ()
    return compute_scent_bars(encoding)
