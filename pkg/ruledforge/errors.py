"""Exceptions raised by the RuledForge engines."""

from __future__ import annotations


class NonTerminationError(RuntimeError):
    """Rewriting did not reach a fixpoint within the step budget."""


class ZeroMapError(ValueError):
    """A chart-map computation produced an identically zero matrix."""


class WitnessValidationError(ValueError):
    """A supplied conjugation witness failed symbolic validation."""
