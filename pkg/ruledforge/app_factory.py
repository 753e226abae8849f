"""CLI app factory for RuledForge."""

from __future__ import annotations

import logging
import sys

import click

from .commands import EXIT_INPUT, build_commands
from .config import build_config

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def create_cli() -> click.Group:
    """Create and configure the command group."""

    @click.group(help="Classify real structures on minimal ruled surfaces.")
    @click.pass_context
    def cli(ctx: click.Context) -> None:
        try:
            cfg = build_config()
        except ValueError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(EXIT_INPUT)
        logging.basicConfig(level=cfg.log_level, format=LOG_FORMAT, stream=sys.stderr)
        ctx.obj = cfg

    for command in build_commands():
        cli.add_command(command)
    return cli
