"""Rich terminal rendering for verification results."""

import logging
from collections import Counter
from typing import Optional, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..verify.suite import CheckResult

logger = logging.getLogger(__name__)


STATUS_ICONS = {
    True: "[green]✓ pass[/green]",
    False: "[red]✗ FAIL[/red]",
}


class TerminalReporter:
    """Renders CheckResults as a table followed by a summary panel."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()

    def show_checks(self, results: Sequence[CheckResult]):
        self.console.print(self._render_table(results))
        self.console.print(self._render_summary(results))

    def _render_table(self, results: Sequence[CheckResult]) -> Table:
        table = Table(title=f"Verification ({len(results)} checks)", show_lines=False)

        table.add_column("Group", style="cyan", no_wrap=True)
        table.add_column("Check", style="bold")
        table.add_column("Result", justify="center", width=8)
        table.add_column("Detail", style="dim")

        for result in results:
            table.add_row(
                result.group,
                result.name,
                Text.from_markup(STATUS_ICONS[result.passed]),
                result.detail,
            )

        if not results:
            table.add_row("", "No checks selected", "", "")

        return table

    def _render_summary(self, results: Sequence[CheckResult]) -> Panel:
        failures = Counter(r.group for r in results if not r.passed)
        passed = len(results) - sum(failures.values())

        if failures:
            groups = ", ".join(f"{group} ({count})" for group, count in sorted(failures.items()))
            text = f"[red]{sum(failures.values())} failed[/red], {passed} passed\nFailing groups: {groups}"
            border = "red"
        else:
            text = f"[green]All {passed} checks passed[/green]"
            border = "green"

        return Panel(Text.from_markup(text), title="Summary", border_style=border)
