from typing import Optional

from src.commands.base_command import BaseCommand, CommandRequest, CommandResult, LogCallback
from src.oretower import OreTower


class VanishCommand(BaseCommand):
    """List the generators G_1, ..., G_n of the vanishing ideal."""

    def __init__(self) -> None:
        super().__init__("vanish")

    def run(self, tower: OreTower, request: CommandRequest, on_log: Optional[LogCallback] = None) -> CommandResult:
        tower.vanishing_gens(on_log)
        result = CommandResult()
        degrees = tower.vanishing_degrees()
        for i in range(1, tower.n + 1):
            result.lines.append(tower.format_vanishing(i))
        result.lines.append("degrees: " + " ".join(str(d) for d in degrees))
        result.payload = {"generators": result.lines[:-1], "degrees": degrees}
        return result
