"""Rich-based display helpers. Everything goes to stderr; stdout carries data."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

console = Console(stderr=True)


def show_error(title: str, message: str) -> None:
    """Display an error panel with red border."""
    panel = Panel(
        f"[red]{message}[/red]",
        title=f"[bold red]{title}[/bold red]",
        border_style="red",
    )
    console.print(panel)


def show_success(message: str) -> None:
    """Display a success panel with green border."""
    panel = Panel(
        f"[green]{message}[/green]",
        title="[bold green]Success[/bold green]",
        border_style="green",
    )
    console.print(panel)


def show_report_table(title: str, record: Mapping[str, Any]) -> None:
    """Two-column table of a flat report record; the pass flag is colored."""
    table = Table(title=title)
    table.add_column("Key", style="cyan")
    table.add_column("Value", justify="right")

    for key, value in record.items():
        if key == "pass":
            shown = "[green]PASS[/green]" if value else "[bold red]FAIL[/bold red]"
        elif isinstance(value, float):
            shown = f"{value:.6g}"
        else:
            shown = str(value)
        table.add_row(key, shown)

    console.print(table)
