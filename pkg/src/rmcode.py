"""Skew Reed-Muller codes: evaluation of a monomial set at every point of K^m.

Points are listed lexicographically with the last coordinate varying
fastest.  The minimum distance is exact: every nonzero combination of a row
basis is encoded, in vectorised blocks, and its weight taken.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from src.config import get_settings
from src.errors import InputError, ResourceLimitError
from src.fields import FieldSpec, format_field
from src.oretower import OreTower, Word, format_word, parse_word

LogCallback = Callable[[str, str, str], None]
MODES = ("word", "normal", "literal")


@dataclass(frozen=True)
class MonomialSet:
    """Ordered words evaluated by ``eval_word``, after normalization (``normal``) or by the literal peel (``literal``)."""

    words: Tuple[Word, ...]
    mode: str = "word"
    degree_bound: Optional[int] = None
    caps: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {MODES}, got {self.mode!r}")
        if len(set(self.words)) != len(self.words):
            raise InputError("monomial set contains duplicates")
        if self.degree_bound is not None:
            for word in self.words:
                if word.degree > self.degree_bound:
                    raise InputError(f"word of degree {word.degree} exceeds the bound {self.degree_bound}")

    def __len__(self) -> int:
        return len(self.words)

    def with_mode(self, mode: str) -> "MonomialSet":
        return MonomialSet(self.words, mode, self.degree_bound, self.caps)


def _graded_key(word: Word) -> Tuple[int, Tuple[int, ...]]:
    return word.degree, word.letters


def monomial_basis(m: int, r: int, caps: Optional[Sequence[int]] = None, mode: str = "word") -> MonomialSet:
    """All t_1^l_1 ... t_m^l_m with sum l_i <= r and l_i <= caps[i], graded then lexicographic."""
    if m < 1 or r < 0:
        raise InputError(f"need m >= 1 and r >= 0, got m={m}, r={r}")
    caps = tuple(caps) if caps is not None else (r,) * m
    if len(caps) != m or any(c < 0 for c in caps):
        raise InputError(f"expected {m} non-negative caps, got {list(caps)}")
    ranges = [range(min(c, r) + 1) for c in caps]
    words = [Word.from_exponents(e) for e in itertools.product(*ranges) if sum(e) <= r]
    return MonomialSet(tuple(sorted(words, key=_graded_key)), mode, r, caps)


def multilinear_basis(m: int, r: int, mode: str = "word") -> MonomialSet:
    return monomial_basis(m, r, (1,) * m, mode)


def reduced_basis(tower: OreTower, r: int, mode: str = "word") -> MonomialSet:
    """Caps deg G_i - 1 from the vanishing generators of the tower."""
    caps = [d - 1 for d in tower.vanishing_degrees()]
    return monomial_basis(tower.n, r, caps, mode)


@dataclass(frozen=True)
class EvaluationMatrix:
    field: FieldSpec
    values: np.ndarray
    points: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...] = ()

    @property
    def rows(self) -> int:
        return int(self.values.shape[0])

    @property
    def cols(self) -> int:
        return int(self.values.shape[1])


def generator_matrix(ms: MonomialSet, tower: OreTower, on_log: Optional[LogCallback] = None) -> EvaluationMatrix:
    """Row i holds monomial i evaluated at every point of K^m."""
    for word in ms.words:
        outside = [j for j in word.letters if not 1 <= j <= tower.n]
        if outside:
            raise InputError(f"word with letters {list(word.letters)} uses t{outside[0]}, tower has {tower.n} variables")
    points = tuple(tower.field.points(tower.n))
    values = np.zeros((len(ms), len(points)), dtype=np.int64)
    if ms.mode == "normal":
        polys = [tower.word_poly(word) for word in ms.words]
        for r, f in enumerate(polys):
            values[r] = [tower.eval_normal(f, point) for point in points]
    else:
        evaluate = tower.eval_word_literal if ms.mode == "literal" else tower.eval_word
        for r, word in enumerate(ms.words):
            values[r] = [evaluate(word, point) for point in points]
    if on_log:
        on_log("rmcode", f"{len(ms)} monomials, {ms.mode} mode", f"{len(points)} points")
    labels = tuple(format_word(word, tower.names) for word in ms.words)
    return EvaluationMatrix(tower.field, values, points, labels)


def rank_dimension(M: EvaluationMatrix) -> int:
    if M.values.size == 0:
        return 0
    return int(np.linalg.matrix_rank(M.field.gf(M.values)))


def row_basis(M: EvaluationMatrix) -> np.ndarray:
    """Nonzero rows of the reduced row echelon form, as integer codes."""
    if M.values.size == 0:
        return np.zeros((0, M.cols), dtype=np.int64)
    reduced = M.field.gf(M.values).row_reduce().view(np.ndarray)
    return reduced[np.any(reduced != 0, axis=1)]


def min_distance_with_witness(
    M: EvaluationMatrix,
    max_codewords: Optional[int] = None,
    block_size: Optional[int] = None,
    on_log: Optional[LogCallback] = None,
) -> Tuple[int, List[int]]:
    """Exact minimum weight and a codeword attaining it; (0, zero word) for the zero code.

    :raises ResourceLimitError: q^k exceeds ``max_codewords``.
    """
    settings = get_settings()
    max_codewords = max_codewords or settings.max_codewords
    block_size = block_size or settings.scan_block_size
    field = M.field
    GF = field.gf
    basis = row_basis(M)
    k, n = basis.shape
    if k == 0:
        return 0, [0] * n
    total = field.q**k
    if total > max_codewords:
        raise ResourceLimitError(f"{field.q}^{k} = {total} codewords exceed the cap of {max_codewords}")

    basis_gf = GF(basis)
    powers = field.q ** np.arange(k, dtype=np.int64)
    best, witness = n + 1, None
    for start in range(1, total, block_size):
        messages = np.arange(start, min(start + block_size, total), dtype=np.int64)
        digits = (messages[:, None] // powers[None, :]) % field.q
        codewords = (GF(digits) @ basis_gf).view(np.ndarray)
        weights = np.count_nonzero(codewords, axis=1)
        i = int(np.argmin(weights))
        if weights[i] < best:
            best, witness = int(weights[i]), codewords[i].tolist()
            if best == 1:
                break
    if on_log:
        on_log("rmcode", f"scanned {field.q}^{k} codewords", f"d = {best}")
    return best, witness


def min_distance_exhaustive(M: EvaluationMatrix, max_codewords: Optional[int] = None, **kwargs: Any) -> int:
    return min_distance_with_witness(M, max_codewords, **kwargs)[0]


def encode(message: Sequence[int], M: EvaluationMatrix) -> List[int]:
    """message * M over K."""
    if len(message) != M.rows:
        raise InputError(f"message has {len(message)} symbols, matrix has {M.rows} rows")
    GF = M.field.gf
    codeword = GF([M.field.check(x) for x in message]) @ GF(M.values)
    return codeword.view(np.ndarray).tolist()


class CodeReport(BaseModel):
    field: str = Field(..., description="Field descriptor p^m:modulus.")
    length: int = Field(..., description="n = q^m")
    dimension: int = Field(..., description="k, rank over K")
    distance: int = Field(..., description="exact minimum Hamming weight")
    mode: str
    monomials: List[str] = Field(default_factory=list)
    point_order: str = "lexicographic, last coordinate fastest"
    witness: List[int] = Field(default_factory=list)
    basis: List[List[int]] = Field(default_factory=list)

    def header(self) -> str:
        return f"{self.length} {self.dimension} {self.distance}"


def report_for_matrix(
    M: EvaluationMatrix,
    mode: str = "word",
    max_codewords: Optional[int] = None,
    on_log: Optional[LogCallback] = None,
) -> CodeReport:
    basis = row_basis(M)
    distance, witness = min_distance_with_witness(M, max_codewords, on_log=on_log)
    return CodeReport(
        field=format_field(M.field),
        length=M.cols,
        dimension=int(basis.shape[0]),
        distance=distance,
        mode=mode,
        monomials=list(M.labels),
        witness=witness,
        basis=basis.tolist(),
    )


def code_report(
    ms: MonomialSet,
    tower: OreTower,
    max_codewords: Optional[int] = None,
    on_log: Optional[LogCallback] = None,
) -> CodeReport:
    """[n, k, d] of the code spanned by the evaluations of ``ms``."""
    return report_for_matrix(generator_matrix(ms, tower, on_log), ms.mode, max_codewords, on_log)


# -- text forms


def parse_monomials(text: str, names: Sequence[str]) -> List[Word]:
    """One word per line, letters left to right, optional leading coefficient; ``1`` is the constant."""
    words = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            words.append(parse_word(line, names))
    if not words:
        raise InputError("monomial file lists no words")
    return words


def format_monomials(ms: MonomialSet, names: Sequence[str]) -> str:
    return "".join((format_word(w, names) or "1") + "\n" for w in ms.words)


def write_matrix_dump(report: CodeReport) -> str:
    lines = [report.header()]
    lines += [" ".join(str(x) for x in row) for row in report.basis]
    return "\n".join(lines) + "\n"


def read_matrix_dump(text: str, field: FieldSpec) -> Tuple[Tuple[int, int, int], EvaluationMatrix]:
    """Parse ``n k d`` followed by k rows; returns the header and the rows as a matrix."""
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 3:
        raise InputError("matrix dump must start with 'n k d'")
    try:
        n, k, d = (int(x) for x in lines[0])
        rows = [[field.check(int(x)) for x in line] for line in lines[1:]]
    except ValueError as e:
        raise InputError(f"bad matrix dump: {e}") from e
    if len(rows) != k or any(len(row) != n for row in rows):
        raise InputError(f"matrix dump declares {k} rows of length {n}")
    values = np.array(rows, dtype=np.int64).reshape(k, n)
    return (n, k, d), EvaluationMatrix(field, values, ())


def is_affine_invariant(M: EvaluationMatrix, A: Sequence[Sequence[int]], b: Sequence[int]) -> bool:
    """Whether x -> Ax + b maps the code onto itself; an empirical diagnostic.

    :raises InputError: A is not an invertible m x m matrix or ``M`` carries no points.
    """
    field, GF = M.field, M.field.gf
    if not M.points:
        raise InputError("matrix carries no point order")
    m = len(M.points[0])
    A_gf, b_gf = GF(np.array(A, dtype=np.int64)), GF(np.array(b, dtype=np.int64))
    if A_gf.shape != (m, m) or b_gf.shape != (m,) or np.linalg.matrix_rank(A_gf) != m:
        raise InputError(f"affine map needs an invertible {m}x{m} matrix and a length-{m} shift")
    points = GF(np.array(M.points, dtype=np.int64))
    images = (points @ A_gf.T + b_gf).view(np.ndarray)
    weights = field.q ** np.arange(m - 1, -1, -1, dtype=np.int64)
    index = images @ weights
    basis = row_basis(M)
    permuted = basis[:, index]
    return rank_dimension(EvaluationMatrix(field, np.vstack([basis, permuted]), M.points)) == basis.shape[0]
