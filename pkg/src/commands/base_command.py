"""Contract shared by the ``orecalc`` subcommands and the request they receive."""

import sys
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from src.errors import InputError
from src.oretower import OreTower, Word, parse_terms, parse_word

LogCallback = Callable[[str, str, str], None]


class CommandRequest(BaseModel):
    """Everything a subcommand needs, validated before any computation starts."""

    command: Literal["eval", "goodpoints", "vanish", "rmcode"]
    tower_file: Optional[str] = Field(None, description="Tower description file.")
    preset: Optional[str] = Field(None, description="Named tower instead of a file.")
    expression: Optional[str] = Field(None, description="eval: sum of words, e.g. '1 + 2 t1 t2'.")
    word: bool = Field(False, description="eval: evaluate each word by peeling its rightmost letter.")
    points_file: Optional[str] = Field(None, description="eval: point list, '-' for stdin.")
    monomials_file: Optional[str] = None
    r: Optional[int] = Field(None, ge=0, description="rmcode: total degree bound.")
    caps: Optional[List[int]] = Field(None, description="rmcode: per-variable degree caps.")
    multilinear: bool = False
    reduced: bool = Field(False, description="rmcode: caps deg G_i - 1.")
    mode: Literal["word", "normal", "literal"] = "word"
    matrix: bool = False
    max_codewords: Optional[int] = Field(None, gt=0)

    @field_validator("tower_file", "monomials_file", "points_file")
    @classmethod
    def _exists(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value != "-" and not Path(value).is_file():
            raise ValueError(f"no such file: {value}")
        return value

    @field_validator("caps")
    @classmethod
    def _caps(cls, value: Optional[List[int]]) -> Optional[List[int]]:
        if value is not None and any(c < 0 for c in value):
            raise ValueError("caps must be non-negative")
        return value

    @model_validator(mode="after")
    def _one_tower(self) -> "CommandRequest":
        if (self.tower_file is None) == (self.preset is None):
            raise ValueError("give exactly one of --tower and --preset")
        if self.command == "eval" and not self.expression:
            raise ValueError("eval needs a polynomial or word")
        return self


@dataclass
class CommandResult:
    lines: List[str] = field(default_factory=list)
    payload: Dict[str, Any] = field(default_factory=dict)


def read_text(path: str) -> str:
    """File contents, or stdin for ``-``."""
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def parse_expression(text: str, tower: OreTower) -> List[Word]:
    """``[c] x y ... + [c] z ...``, or ``c:l1,...,ln + ...`` exponent terms; coefficients are field elements."""
    if ":" in text:
        terms = parse_terms(text, tower.n, tower.field)
        words = [Word.from_exponents(exps, c) for exps, c in terms.items() if c]
        return words or [Word(0, ())]
    words = [parse_word(part, tower.names) for part in text.split("+") if part.strip()]
    if not words:
        raise InputError(f"empty polynomial {text!r}")
    for w in words:
        tower.field.check(w.coefficient)
    return words


def format_point(point) -> str:
    return " ".join(str(a) for a in point)


class BaseCommand(ABC):
    """Abstract base class for all subcommands."""

    def __init__(self, name: str) -> None:
        self.name = name

    @abstractmethod
    def run(self, tower: OreTower, request: CommandRequest, on_log: Optional[LogCallback] = None) -> CommandResult:
        """
        Execute the subcommand on a loaded tower.
        :param tower: The tower named by the request.
        :param request: Validated arguments.
        :param on_log: Optional (source, message, detail) progress callback.
        """
        raise NotImplementedError
