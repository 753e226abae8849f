"""Command reports and their text/JSON rendering."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader

from .codec import dump_json

TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"

_env = Environment(
    loader=FileSystemLoader(TEMPLATE_DIR),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


@dataclass
class Check:
    """One named verification with its outcome."""

    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    """Result of one command: echoed inputs, payload, checks, and text lines for humans."""

    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    result: Any = None
    checks: list[Check] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    @property
    def passed_count(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def render_text(report: Report) -> str:
    return _env.get_template("report.txt.j2").render(report=report)


def render_json(report: Report) -> str:
    return dump_json(report.to_dict())
