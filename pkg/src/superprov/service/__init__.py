"""FastAPI service exposing sessions, ingestion, geometry, recovery, and export."""

from .app import app, create_app

__all__ = ["app", "create_app"]
