from typing import Optional

from src.commands.base_command import BaseCommand, CommandRequest, CommandResult, LogCallback, format_point
from src.oretower import OreTower


class GoodPointsCommand(BaseCommand):
    """Tag every point of K^n GOOD or BAD."""

    def __init__(self) -> None:
        super().__init__("goodpoints")

    def run(self, tower: OreTower, request: CommandRequest, on_log: Optional[LogCallback] = None) -> CommandResult:
        result = CommandResult()
        good = []
        for point, ok in tower.good_points():
            result.lines.append(f"{format_point(point)} {'GOOD' if ok else 'BAD'}")
            if ok:
                good.append(list(point))
        bad = len(result.lines) - len(good)
        result.lines.append(f"{len(good)} GOOD, {bad} BAD")
        if on_log:
            on_log(self.name, f"{len(result.lines) - 1} points scanned", f"{len(good)} good")
        result.payload = {"good": len(good), "bad": bad, "good_points": good}
        return result
