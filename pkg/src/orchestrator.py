from pathlib import Path
from typing import Any, Callable, Dict

from src.commands import (
    CommandRequest, CommandResult, EvalCommand, GoodPointsCommand, RMCodeCommand, VanishCommand,
)
from src.config import Settings, get_settings
from src.errors import InputError, TowerError
from src.oretower import OreTower, parse_tower, tower_validate
from src.presets import get_preset


class CommandOrchestrator:
    """Load the tower named by a request and dispatch to the matching subcommand.

    Subcommands run one after another and report progress through the
    ``on_log(source, message, detail)`` callback; results come back as
    ordered text lines plus a JSON-ready payload.
    """

    def __init__(
        self,
        settings: Settings | None = None,
        on_log: Callable[[str, str, str], None] | None = None,
    ) -> None:
        """Create a new orchestrator.

        :param settings: Runtime settings; defaults to :func:`get_settings`.
        :param on_log: Optional callback to receive (source, message, detail) events.
        """
        self.settings = settings or get_settings()
        self.on_log = on_log
        self.commands: Dict[str, Any] = {
            "eval":       EvalCommand(),
            "goodpoints": GoodPointsCommand(),
            "vanish":     VanishCommand(),
            "rmcode":     RMCodeCommand(),
        }

    def load_tower(self, request: CommandRequest) -> OreTower:
        """Build the tower from ``--tower`` or ``--preset``; file towers are checked for consistency.

        :raises TowerError: unparsable file or sigma/delta that violate the Ore relations.
        """
        if request.preset:
            spec = get_preset(request.preset)
            source = f"preset {request.preset}"
        else:
            spec = parse_tower(Path(request.tower_file).read_text(encoding="utf-8"))
            report = tower_validate(spec)
            if not report.ok:
                raise TowerError("; ".join(report.violations))
            source = request.tower_file
        tower = OreTower(spec)
        if self.on_log:
            self.on_log("tower", source, f"{tower.field} with variables {' '.join(tower.names)}")
        return tower

    def run(self, request: CommandRequest) -> CommandResult:
        command = self.commands.get(request.command)
        if command is None:
            raise InputError(f"unknown subcommand {request.command!r}")
        if self.settings.load_error and self.on_log:
            self.on_log("config", "using built-in defaults", self.settings.load_error)
        tower = self.load_tower(request)
        return command.run(tower, request, self.on_log)
