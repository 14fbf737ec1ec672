import numpy as np
import pytest

from src.errors import InputError, ResourceLimitError
from src.oretower import OreTower, Word
from src.presets import get_preset
from src.rmcode import (
    EvaluationMatrix, MonomialSet, code_report, encode, format_monomials, generator_matrix, is_affine_invariant,
    min_distance_exhaustive, monomial_basis, multilinear_basis, parse_monomials, rank_dimension,
    read_matrix_dump, reduced_basis, write_matrix_dump,
)


def words(*letter_lists):
    return tuple(Word(1, tuple(letters)) for letters in letter_lists)


def test_multilinear_basis_order():
    ms = multilinear_basis(3, 3)
    assert format_monomials(ms, ["t1", "t2", "t3"]).split("\n")[:-1] == [
        "1", "t1", "t2", "t3", "t1 t2", "t1 t3", "t2 t3", "t1 t2 t3",
    ]


def test_graded_basis_size():
    assert len(monomial_basis(2, 2)) == 6
    assert len(monomial_basis(2, 3, caps=(1, 3))) == 7


def test_monomial_set_rejects_duplicates_and_degree_overflow():
    with pytest.raises(InputError):
        MonomialSet(words((1,), (1,)))
    with pytest.raises(InputError):
        MonomialSet(words((1, 2)), degree_bound=1)
    with pytest.raises(InputError):
        MonomialSet(words((1,)), mode="lazy")


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_classical_reed_muller(m):
    tower = OreTower(get_preset(f"classical-2^1-{m}"))
    report = code_report(multilinear_basis(m, 1), tower)
    assert (report.length, report.dimension, report.distance) == (2**m, m + 1, 2 ** (m - 1))


def test_two_variable_frobenius_codes(f4_tower):
    normal = code_report(MonomialSet(words((), (1,), (2,), (1, 2)), "normal"), f4_tower)
    assert normal.header() == "16 4 9"
    word = code_report(MonomialSet(words((), (1,), (2,), (2, 1)), "word"), f4_tower)
    assert word.header() == "16 4 9"
    assert word.monomials == ["1", "t1", "t2", "t2 t1"]
    assert sum(1 for x in word.witness if x) == 9
    literal = code_report(MonomialSet(words((), (1,), (2,), (2, 1)), "literal"), f4_tower)
    assert literal.header() == "16 4 9"


def test_word_mode_matches_normal_mode_on_unordered_words(f4_tower):
    ms = MonomialSet(words((2, 1), (2, 2, 1)), "word")
    by_word = generator_matrix(ms, f4_tower).values
    by_normal = generator_matrix(ms.with_mode("normal"), f4_tower).values
    by_literal = generator_matrix(ms.with_mode("literal"), f4_tower).values
    assert np.array_equal(by_word, by_normal)
    assert not np.array_equal(by_word, by_literal)


def test_three_variable_multilinear_code(sec21_tower):
    report = code_report(multilinear_basis(3, 3), sec21_tower)
    assert (report.length, report.dimension, report.distance) == (64, 8, 27)


def test_reduced_basis_caps():
    tower = OreTower(get_preset("f4-sec21-2var"))
    ms = reduced_basis(tower, 5)
    assert ms.caps == (2, 3)
    assert len(ms) == 12


def test_distance_cap(f4_tower):
    M = generator_matrix(multilinear_basis(2, 2), f4_tower)
    with pytest.raises(ResourceLimitError):
        min_distance_exhaustive(M, max_codewords=10)


def test_zero_code(f4):
    M = EvaluationMatrix(f4, np.zeros((2, 16), dtype=np.int64), ())
    assert rank_dimension(M) == 0
    assert min_distance_exhaustive(M) == 0


def test_encode(f4_tower):
    M = generator_matrix(multilinear_basis(2, 2), f4_tower)
    assert encode([0, 1, 0, 0], M) == M.values[1].tolist()
    assert encode([0, 0, 0, 0], M) == [0] * 16
    with pytest.raises(InputError):
        encode([1, 2], M)


def test_matrix_dump_round_trip(f4_tower, f4):
    report = code_report(multilinear_basis(2, 2), f4_tower)
    (n, k, d), M = read_matrix_dump(write_matrix_dump(report), f4)
    assert (n, k, d) == (report.length, report.dimension, report.distance)
    assert rank_dimension(M) == k
    assert min_distance_exhaustive(M) == d


def test_malformed_matrix_dump(f4):
    with pytest.raises(InputError):
        read_matrix_dump("16 1\n", f4)
    with pytest.raises(InputError):
        read_matrix_dump("4 1 1\n1 2 3\n", f4)


def test_monomial_file():
    text = "# basis\n1\nt1\nt2 t1   # unordered\n\n2 t2\n"
    assert parse_monomials(text, ["t1", "t2"]) == [Word(1, ()), Word(1, (1,)), Word(1, (2, 1)), Word(2, (2,))]
    with pytest.raises(InputError):
        parse_monomials("# nothing\n", ["t1"])


def test_affine_invariance_of_classical_codes():
    tower = OreTower(get_preset("classical-2^1-2"))
    M = generator_matrix(multilinear_basis(2, 1), tower)
    assert is_affine_invariant(M, [[1, 0], [0, 1]], [1, 0])
    assert is_affine_invariant(M, [[0, 1], [1, 0]], [0, 0])
    with pytest.raises(InputError):
        is_affine_invariant(M, [[1, 1], [1, 1]], [0, 0])


def test_words_outside_the_tower(f4_tower):
    with pytest.raises(InputError):
        generator_matrix(MonomialSet(words((3,))), f4_tower)


def test_words_outside_the_tower_name_the_letter(f4_tower):
    with pytest.raises(InputError, match="uses t3, tower has 2 variables"):
        generator_matrix(MonomialSet(words((1,), (2, 3))), f4_tower)
