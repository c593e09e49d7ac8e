"""Host-facing embedding contract: session lifecycle, subscriptions, navigation, restore.

Any UI binds the engine through these functions. Observers are notified
synchronously on the mutating thread; snapshots handed to callbacks are
immutable and may cross threads freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core import DEFAULT_PALETTE, ProvenanceSnapshot, Session
from .errors import InvalidConfig
from .recovery import StateMap, restore_to


@dataclass(frozen=True)
class SessionConfig:
    palette: Optional[Sequence[str]] = None
    coalescing_window_ms: Optional[int] = None
    a_min: Optional[float] = None
    a_max: Optional[float] = None


@dataclass
class ProvenanceObserver:
    """Callable triple; any object exposing these attribute names also works."""

    on_change: Optional[Callable[[ProvenanceSnapshot], None]] = None
    on_navigate: Optional[Callable[[str], None]] = None
    on_restore: Optional[Callable[[StateMap], None]] = None


@dataclass
class Subscription:
    session: Session
    observer: object
    active: bool = True


def create_session(config: Optional[SessionConfig] = None) -> Session:
    """New empty session scoped to the returned handle.

    Multiple sessions coexist independently; registrations and mutations on
    one never affect another.
    """
    config = config or SessionConfig()
    palette = config.palette
    if palette is not None:
        palette = tuple(palette)
        if not palette:
            raise InvalidConfig("palette must not be empty")
        if any(not isinstance(c, str) or not c for c in palette):
            raise InvalidConfig("palette entries must be non-empty strings")
        if len(set(palette)) != len(palette):
            raise InvalidConfig("palette entries must be unique")
    window = config.coalescing_window_ms
    if window is not None and window < 0:
        raise InvalidConfig("coalescing_window_ms must be >= 0")
    if config.a_min is not None and config.a_max is not None:
        if not config.a_min < config.a_max:
            raise InvalidConfig("a_min must be < a_max")
    session = Session(
        palette=palette or DEFAULT_PALETTE,
        coalescing_window_ms=window,
    )
    session.config = config
    return session


def subscribe(session: Session, observer: object) -> Subscription:
    """Deliver on_change for every mutation completed after this call."""
    session.add_observer(observer)
    return Subscription(session=session, observer=observer)


def unsubscribe(subscription: Subscription) -> None:
    if subscription.active:
        subscription.session.remove_observer(subscription.observer)
        subscription.active = False


def request_navigate(session: Session, widget_id: str) -> None:
    """Fire on_navigate on every observer; no provenance mutation occurs."""
    session.dispatch_navigate(widget_id)


def request_restore(session: Session, seq: int, wall_time: Optional[int] = None) -> None:
    """Restore to ``seq``; observers receive on_restore then on_change."""
    restore_to(session, seq, wall_time=wall_time)
