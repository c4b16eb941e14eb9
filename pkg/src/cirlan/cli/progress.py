"""Progress bar for Monte Carlo replications."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager

from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from cirlan.cli.display import console
from cirlan.parallel import ProgressFn


@contextmanager
def replication_progress(description: str, total: int) -> Iterator[ProgressFn]:
    """Yield a callback taking the number of finished replications.

    The bar is transient and drawn on stderr, so it never mixes with reports.
    """
    columns = (
        TextColumn("[cyan]{task.description}[/cyan]"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
    )
    with Progress(*columns, console=console, transient=True) as progress:
        task = progress.add_task(description, total=total)

        def update(done: int) -> None:
            progress.update(task, completed=done)

        yield update
