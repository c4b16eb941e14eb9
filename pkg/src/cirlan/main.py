"""CLI entry point for cirlan."""

from __future__ import annotations

import argparse
import logging
import sys
import types
from pathlib import Path
from typing import Any, Literal, Union, get_args, get_origin

from pydantic.fields import FieldInfo
from rich.logging import RichHandler

from cirlan import __version__
from cirlan.cli.commands import COMMANDS
from cirlan.cli.display import console, show_error
from cirlan.config import SECTIONS, load_config, section_with_overrides
from cirlan.errors import CirLanError

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]

_TRUE = {"true", "1", "yes", "on"}
_FALSE = {"false", "0", "no", "off"}


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise argparse.ArgumentTypeError(f"expected true or false (got {text!r})")


def _unwrap_optional(annotation: Any) -> Any:
    if get_origin(annotation) in (Union, types.UnionType):
        args = [arg for arg in get_args(annotation) if arg is not type(None)]
        if len(args) == 1:
            return args[0]
    return annotation


def _add_field_flag(parser: argparse.ArgumentParser, name: str, field: FieldInfo) -> None:
    """One ``--name`` flag per config key (plus a dashed alias), absent unless given."""
    flags = [f"--{name}"]
    if "_" in name:
        flags.append(f"--{name.replace('_', '-')}")
    kwargs: dict[str, Any] = {
        "dest": name,
        "default": argparse.SUPPRESS,
        "help": field.description,
    }
    annotation = _unwrap_optional(field.annotation)
    if annotation is bool:
        kwargs.update(type=_parse_bool, nargs="?", const=True, metavar="BOOL")
    elif get_origin(annotation) is Literal:
        kwargs["choices"] = list(get_args(annotation))
    elif annotation in (int, float):
        kwargs["type"] = annotation
    parser.add_argument(*flags, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cirlan",
        description="Simulation, likelihood and local asymptotics for the CIR diffusion.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, default=None, help="TOML config file")
    parser.add_argument("--json", action="store_true", help="Emit reports as one JSON line")
    parser.add_argument(
        "--log-level", default="WARNING", choices=LOG_LEVELS, type=str.upper, help="Log level"
    )

    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, section in SECTIONS.items():
        sub = subparsers.add_parser(name, help=(section.__doc__ or "").strip() or None)
        for field_name, field in section.model_fields.items():
            _add_field_flag(sub, field_name, field)
    return parser


def _setup_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def main(argv: list[str] | None = None) -> None:
    """Parse args, load config, run the subcommand, map errors to exit codes."""
    args = build_parser().parse_args(argv)
    _setup_logging(args.log_level)

    overrides = {
        key: value
        for key, value in vars(args).items()
        if key in SECTIONS[args.command].model_fields
    }

    try:
        config = load_config(args.config)
        section = section_with_overrides(config, args.command, overrides)
        COMMANDS[args.command](section, args.json)
    except CirLanError as exc:
        show_error(type(exc).__name__, str(exc))
        sys.exit(exc.exit_code)
    except KeyboardInterrupt:
        console.print("\nInterrupted.")
        sys.exit(130)
