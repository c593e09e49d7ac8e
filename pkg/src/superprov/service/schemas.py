"""Pydantic request/response models for the HTTP service, plus core converters."""
from __future__ import annotations

from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

from .. import analysis, core, layout
from ..persistence import domain_to_json, value_to_json


# -- value / domain wire shapes (mirror the session-document schema) ---------


class NumericValueModel(BaseModel):
    type: Literal["numeric"] = "numeric"
    value: float


class RangeValueModel(BaseModel):
    type: Literal["range"] = "range"
    low: float
    high: float


class SelectionValueModel(BaseModel):
    type: Literal["selection"] = "selection"
    selected: List[str]


class TextValueModel(BaseModel):
    type: Literal["text"] = "text"
    value: str


ValueModel = Annotated[
    Union[NumericValueModel, RangeValueModel, SelectionValueModel, TextValueModel],
    Field(discriminator="type"),
]


class NumericDomainModel(BaseModel):
    type: Literal["numeric"] = "numeric"
    low: float
    high: float


class OptionsDomainModel(BaseModel):
    type: Literal["options"] = "options"
    options: List[str]


DomainModel = Annotated[
    Union[NumericDomainModel, OptionsDomainModel], Field(discriminator="type")
]

WidgetKindName = Literal[
    "radio-group",
    "checkbox-group",
    "single-slider",
    "range-slider",
    "single-select",
    "multi-select",
    "text-input",
]


def value_to_core(model: Any) -> core.WidgetValue:
    if isinstance(model, NumericValueModel):
        return core.NumericValue(model.value)
    if isinstance(model, RangeValueModel):
        return core.RangeValue(model.low, model.high)
    if isinstance(model, SelectionValueModel):
        return core.SelectionValue(frozenset(model.selected))
    return core.TextValue(model.value)


def value_from_core(value: core.WidgetValue) -> Dict[str, Any]:
    return value_to_json(value)


def domain_to_core(model: Optional[Any]) -> core.ValueDomain:
    if model is None:
        return None
    if isinstance(model, NumericDomainModel):
        return core.NumericDomain(model.low, model.high)
    return core.OptionsDomain(tuple(model.options))


def domain_from_core(domain: core.ValueDomain) -> Optional[Dict[str, Any]]:
    return domain_to_json(domain)


# -- session lifecycle --------------------------------------------------------


class SessionConfigModel(BaseModel):
    palette: Optional[List[str]] = None
    coalescing_window_ms: Optional[int] = None
    a_min: Optional[float] = None
    a_max: Optional[float] = None


class CreateSessionResponse(BaseModel):
    session_id: str


class RegisterWidgetRequest(BaseModel):
    id: str
    kind: WidgetKindName
    label: str = ""
    domain: Optional[DomainModel] = None
    initial_value: ValueModel


class WidgetModel(BaseModel):
    id: str
    kind: WidgetKindName
    label: str
    domain: Optional[Dict[str, Any]] = None
    initial_value: Dict[str, Any]
    registration_index: int
    color_index: int
    color: str


def widget_from_core(
    descriptor: core.WidgetDescriptor, palette: Tuple[str, ...]
) -> WidgetModel:
    return WidgetModel(
        id=descriptor.id,
        kind=descriptor.kind.value,
        label=descriptor.label,
        domain=domain_from_core(descriptor.domain),
        initial_value=value_from_core(descriptor.initial_value),
        registration_index=descriptor.registration_index,
        color_index=descriptor.color_index,
        color=palette[descriptor.color_index % len(palette)],
    )


# -- snapshot summaries -------------------------------------------------------


class WidgetStatsModel(BaseModel):
    count: int
    first_seq: Optional[int] = None
    last_seq: Optional[int] = None
    last_wall_time: Optional[int] = None
    record: Dict[str, Any]


class SnapshotModel(BaseModel):
    global_count: int
    widgets: List[WidgetModel]
    per_widget: Dict[str, WidgetStatsModel]


def snapshot_from_core(
    snapshot: core.ProvenanceSnapshot, palette: Tuple[str, ...]
) -> SnapshotModel:
    per_widget = {}
    for widget_id, stats in snapshot.per_widget.items():
        per_widget[widget_id] = WidgetStatsModel(
            count=stats.count,
            first_seq=stats.first_seq,
            last_seq=stats.last_seq,
            last_wall_time=stats.last_wall_time,
            record=analysis.record_summary(stats.record),
        )
    return SnapshotModel(
        global_count=snapshot.global_count,
        widgets=[widget_from_core(d, palette) for d in snapshot.widgets],
        per_widget=per_widget,
    )


# -- mutations ----------------------------------------------------------------


class RecordEventRequest(BaseModel):
    widget_id: str
    value: ValueModel
    wall_time: Optional[int] = None


class RecordEventResponse(BaseModel):
    seq: int
    snapshot: SnapshotModel


class NavigateRequest(BaseModel):
    widget_id: str


class NavigateResponse(BaseModel):
    widget_id: str


class RestoreRequest(BaseModel):
    seq: int
    wall_time: Optional[int] = None


class RestoreResponse(BaseModel):
    state: Dict[str, Dict[str, Any]]
    snapshot: SnapshotModel


# -- layout geometry ----------------------------------------------------------


class TooltipModel(BaseModel):
    widget_id: str
    count: int
    last_wall_time: Optional[int] = None


class AggregateBoxModel(BaseModel):
    widget_id: str
    order: int
    x: float
    y: float
    side: float
    color: str
    filled: bool
    tooltip: TooltipModel


class AggregateLayoutResponse(BaseModel):
    boxes: List[AggregateBoxModel]


def aggregate_from_core(boxes) -> AggregateLayoutResponse:
    return AggregateLayoutResponse(
        boxes=[
            AggregateBoxModel(
                widget_id=b.widget_id,
                order=b.order,
                x=b.x,
                y=b.y,
                side=b.side,
                color=b.color,
                filled=b.filled,
                tooltip=TooltipModel(
                    widget_id=b.tooltip.widget_id,
                    count=b.tooltip.count,
                    last_wall_time=b.tooltip.last_wall_time,
                ),
            )
            for b in boxes
        ]
    )


class TemporalBarModel(BaseModel):
    widget_id: str
    row: int
    start: float
    end: float
    color: str
    event_seq: int


class TemporalLayoutResponse(BaseModel):
    rows: List[str]
    restore_row: int
    bars: List[TemporalBarModel]


def temporal_from_core(temporal: layout.TemporalLayout) -> TemporalLayoutResponse:
    return TemporalLayoutResponse(
        rows=list(temporal.rows),
        restore_row=temporal.restore_row,
        bars=[
            TemporalBarModel(
                widget_id=b.widget_id,
                row=b.row,
                start=b.start,
                end=b.end,
                color=b.color,
                event_seq=b.event_seq,
            )
            for b in temporal.bars
        ],
    )


class ScentBarModel(BaseModel):
    key: str
    offset: float
    length: float
    color: str


class ScentResponse(BaseModel):
    orientation: str
    width: float
    height: float
    bars: List[ScentBarModel]


# -- analysis -----------------------------------------------------------------


class CoInteractionPairModel(BaseModel):
    a: str
    b: str
    count: int


class BiasResponse(BaseModel):
    untouched: List[str]
    ranking: List[Tuple[str, int]]
    window_k: int
    pairs: List[CoInteractionPairModel]


class ImportSessionRequest(BaseModel):
    document: Dict[str, Any]


class ErrorModel(BaseModel):
    error: str
    detail: str
