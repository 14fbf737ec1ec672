from typing import List, Optional, Tuple

from src.commands.base_command import (
    BaseCommand, CommandRequest, CommandResult, LogCallback, format_point, parse_expression, read_text,
)
from src.errors import InputError
from src.oretower import OreTower


def parse_points(text: str, tower: OreTower) -> List[Tuple[int, ...]]:
    """One point per line as n whitespace-separated element codes; ``#`` starts a comment."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            coords = [int(tok) for tok in line.split()]
        except ValueError as e:
            raise InputError(f"points line {lineno}: {e}") from e
        points.append(tower.check_point(coords))
    return points


class EvalCommand(BaseCommand):
    """Evaluate a polynomial (normal form) or a sum of words (rightmost letter first) at points."""

    def __init__(self) -> None:
        super().__init__("eval")

    def run(self, tower: OreTower, request: CommandRequest, on_log: Optional[LogCallback] = None) -> CommandResult:
        words = parse_expression(request.expression, tower)
        if request.points_file:
            points = parse_points(read_text(request.points_file), tower)
        else:
            points = list(tower.field.points(tower.n))

        if request.word:
            values = [tower.eval_words(words, point) for point in points]
        else:
            f = tower.total(tower.word_poly(w) for w in words)
            if on_log:
                on_log(self.name, "normal form", tower.format_pretty(f))
            values = [tower.eval_normal(f, point) for point in points]

        result = CommandResult()
        for point, value in zip(points, values):
            result.lines.append(f"{format_point(point)} {value}")
        result.payload = {
            "mode": "word" if request.word else "normal",
            "values": [{"point": list(p), "value": v} for p, v in zip(points, values)],
        }
        return result
