"""Cross-widget interaction provenance: tracking, geometry, recovery, audit, persistence."""

from .analysis import (
    AuditReport,
    CoInteractionMatrix,
    WidgetAudit,
    audit_report,
    co_interaction,
    untouched_widgets,
    usage_ranking,
)
from .core import (
    DEFAULT_PALETTE,
    EventKind,
    InteractionEvent,
    NumericDomain,
    NumericRecord,
    NumericValue,
    OptionsDomain,
    ProvenanceSnapshot,
    RangeValue,
    RangedRecord,
    SelectionRecord,
    SelectionValue,
    Session,
    TextRecord,
    TextValue,
    WidgetDescriptor,
    WidgetKind,
    WidgetStats,
    WidgetValue,
    validate_value,
    widget_stats,
)
from .embedding import (
    ProvenanceObserver,
    SessionConfig,
    Subscription,
    create_session,
    request_navigate,
    request_restore,
    subscribe,
    unsubscribe,
)
from .errors import (
    DuplicateWidgetId,
    InvalidConfig,
    InvalidInitialValue,
    InvalidValue,
    InvalidViewport,
    InvalidWindow,
    MalformedLog,
    ParseError,
    ProvenanceError,
    ReentrancyError,
    SchemaError,
    SeqOutOfRange,
    UnknownKey,
    UnknownWidgetId,
)
from .layout import (
    AggregateBox,
    ScentBar,
    ScentEncoding,
    ScentGuidance,
    TemporalBar,
    TemporalLayout,
    assign_color,
    compute_aggregate_layout,
    compute_scent_bars,
    compute_temporal_layout,
    linear_color_map,
)
from .persistence import (
    StreamLogWriter,
    load_log,
    parse_session,
    parse_stream,
    render_svg,
    report_to_json,
    serialize_session,
    serialize_stream,
)
from .recovery import StateMap, build_session, replay, restore_to, state_at, value_at

__version__ = "0.1.0"
