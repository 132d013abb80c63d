"""FastAPI service layer; the CLI talks to these endpoints."""

from .app import app, create_app  # noqa: F401
