"""RuledForge package."""

from .app_factory import create_cli

__all__ = ["create_cli"]
