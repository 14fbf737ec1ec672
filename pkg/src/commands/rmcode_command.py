from typing import Optional

from src.commands.base_command import BaseCommand, CommandRequest, CommandResult, LogCallback, read_text
from src.errors import InputError
from src.oretower import OreTower, format_word
from src.rmcode import (
    MonomialSet, code_report, monomial_basis, multilinear_basis, parse_monomials, reduced_basis, write_matrix_dump,
)


def select_monomials(tower: OreTower, request: CommandRequest) -> MonomialSet:
    """From ``--monomials`` or from a basis built by ``--r``, ``--caps``, ``--multilinear``, ``--reduced``."""
    if request.monomials_file:
        words = parse_monomials(read_text(request.monomials_file), tower.names)
        return MonomialSet(tuple(words), request.mode)
    if request.caps is not None and len(request.caps) != tower.n:
        raise InputError(f"--caps needs {tower.n} values, got {len(request.caps)}")
    r = request.r
    if r is None:
        if request.caps is not None:
            r = sum(request.caps)
        elif request.multilinear:
            r = tower.n
        else:
            raise InputError("rmcode needs --monomials, --r, --caps or --multilinear")
    if request.multilinear:
        return multilinear_basis(tower.n, r, request.mode)
    if request.reduced:
        return reduced_basis(tower, r, request.mode)
    return monomial_basis(tower.n, r, request.caps, request.mode)


class RMCodeCommand(BaseCommand):
    """Build a skew Reed-Muller code and report [n, k, d]."""

    def __init__(self) -> None:
        super().__init__("rmcode")

    def run(self, tower: OreTower, request: CommandRequest, on_log: Optional[LogCallback] = None) -> CommandResult:
        ms = select_monomials(tower, request)
        if on_log:
            on_log(self.name, f"{len(ms)} monomials", ", ".join(format_word(w, tower.names) or "1" for w in ms.words))
        report = code_report(ms, tower, request.max_codewords, on_log)
        if request.matrix:
            lines = write_matrix_dump(report).splitlines()
        else:
            lines = [report.header()]
        return CommandResult(lines, report.model_dump())
