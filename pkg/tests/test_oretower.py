import itertools

import pytest

from src.errors import InputError, TowerError
from src.fields import make_field
from src.oretower import (
    LevelSpec, OreTower, TowerSpec, Word, format_terms, format_tower, parse_terms, parse_tower, parse_word,
    tower_validate,
)
from src.presets import F4_MODULUS, get_preset

from conftest import ALPHA, ALPHA2

P = 101


def sample(rng, count=20):
    return [(rng.randrange(P), rng.randrange(P)) for _ in range(count)]


# -- Weyl algebra as a tower


def test_weyl_normal_form_evaluations(weyl101, rng):
    yx = weyl101.word_poly(Word(1, (2, 1)))
    yxx = weyl101.word_poly(Word(1, (2, 1, 1)))
    yyx = weyl101.word_poly(Word(1, (2, 2, 1)))
    for a, b in sample(rng):
        assert weyl101.eval_normal(yx, (a, b)) == (b * a + 1) % P
        assert weyl101.eval_normal(yxx, (a, b)) == (b * a * a + 2 * a) % P
        assert weyl101.eval_normal(yyx, (a, b)) == (b * b * a + 2 * b) % P
    assert weyl101.eval_normal(yx, (0, 0)) == 1


def test_weyl_normal_form_text(weyl101):
    assert weyl101.format_pretty(weyl101.word_poly(Word(1, (2, 1)))) == "X*Y + 1"


def test_word_evaluation_orders_letters_first(weyl101, rng):
    for a, b in sample(rng):
        assert weyl101.eval_word(Word(1, (2, 1)), (a, b)) == (b * a + 1) % P
        assert weyl101.eval_word(Word(1, (2, 2, 1)), (a, b)) == (b * b * a + 2 * b) % P
        assert weyl101.eval_word(Word(1, (1, 2)), (a, b)) == (a * b) % P
    assert weyl101.eval_word(Word(1, (2, 1)), (4, 7)) == 29
    assert weyl101.eval_word(Word(1, (2, 2, 1)), (4, 7)) == 8


def test_literal_word_evaluation_keeps_letter_order(weyl101, rng):
    for a, b in sample(rng):
        assert weyl101.eval_word_literal(Word(1, (2, 1)), (a, b)) == (a * b) % P
        assert weyl101.eval_word_literal(Word(1, (2, 2, 1)), (a, b)) == (a * b * b) % P


def test_normalized_words_agree_with_normal_form(weyl101, rng):
    f = weyl101.word_poly(Word(1, (2, 2, 1)))
    words = [Word.from_exponents(exps, c) for exps, c in weyl101.to_terms(f).items()]
    for a, b in sample(rng):
        assert weyl101.eval_words(words, (a, b)) == weyl101.eval_normal(f, (a, b))


def test_division_chain_ends_in_the_value(weyl101):
    f = weyl101.word_poly(Word(3, (2, 1, 1)))
    chain = weyl101.division_chain(f, (4, 7))
    assert len(chain) == 2
    assert chain[-1] == weyl101.eval_normal(f, (4, 7))


# -- evaluation over F_4


def test_f4_monomial_value(f4_tower):
    t1t2 = f4_tower.word_poly(Word(1, (1, 2)))
    assert f4_tower.eval_normal(t1t2, (ALPHA, ALPHA2)) == ALPHA2
    assert f4_tower.eval_word(Word(1, (2, 1)), (ALPHA, ALPHA2)) == ALPHA2
    assert f4_tower.eval_word_literal(Word(1, (2, 1)), (ALPHA, ALPHA2)) == 1


@pytest.mark.parametrize("preset", ["f4-frobenius-2", "f4-frobenius-3", "f4-frobenius-double", "classical-2^2-3"])
def test_word_and_normal_modes_agree_on_ordered_monomials(preset):
    tower = OreTower(get_preset(preset))
    for exps in itertools.product(range(5), repeat=tower.n):
        if sum(exps) > 4:
            continue
        word = Word.from_exponents(exps)
        f = tower.word_poly(word)
        for point in tower.field.points(tower.n):
            assert tower.eval_word(word, point) == tower.eval_normal(f, point)


def test_arity_and_range_errors(f4_tower):
    with pytest.raises(InputError):
        f4_tower.eval_normal(f4_tower.variable(1), (1,))
    with pytest.raises(InputError):
        f4_tower.eval_word(Word(1, (1,)), (1, 4))
    with pytest.raises(TowerError):
        f4_tower.eval_word(Word(1, (3,)), (1, 1))


# -- good points


def test_classical_tower_is_all_good():
    tower = OreTower(get_preset("classical-2^2-2"))
    tags = tower.good_points()
    assert len(tags) == 16 and all(ok for _, ok in tags)


def test_weyl_tower_has_no_good_points(weyl5):
    tags = weyl5.good_points()
    assert len(tags) == 25 and not any(ok for _, ok in tags)


def test_single_level_is_all_good():
    tower = OreTower(get_preset("f4-frobenius-1"))
    assert all(ok for _, ok in tower.good_points())


def test_frobenius_tower_good_points(f4_tower):
    for (a1, a2), ok in f4_tower.good_points():
        assert ok == (a1 == 0 or a2 in (0, 1))


@pytest.mark.parametrize("preset", [
    "classical-2^2-2", "weyl-f5", "f4-frobenius-2", "f4-frobenius-double", "f4-frobenius-3", "classical-2^1-3",
])
def test_both_good_point_conditions_agree(preset):
    tower = OreTower(get_preset(preset))
    for point in tower.field.points(tower.n):
        ideal, commutator = tower.good_point_conditions(point)
        assert ideal == commutator


# -- commutation relations after a change of variables


def test_commutation_relations_after_substitution(sec21_tower):
    T = sec21_tower
    c = T.constant
    Y1, Y2, Y3 = (T.variable(j) for j in (1, 2, 3))
    X1 = T.add(Y1, c(1))
    X2 = T.total([T.mul(c(ALPHA2), Y2), Y1, c(ALPHA2)])
    X3 = T.total([T.mul(c(ALPHA2), Y3), T.mul(c(ALPHA), Y1), c(ALPHA)])

    def lin(*terms):
        return T.total(T.mul(c(k), x) for k, x in terms)

    mul = T.mul
    assert mul(X1, c(ALPHA)) == lin((ALPHA2, X1), (1, c(1)))
    assert mul(X2, c(ALPHA)) == lin((ALPHA, X2), (1, X1), (1, c(1)))
    assert mul(X2, X1) == lin((ALPHA, mul(X1, X2)), (ALPHA2, X2), (ALPHA2, mul(X1, X1)), (ALPHA2, c(1)))
    assert mul(X3, c(ALPHA)) == lin((ALPHA, X3), (ALPHA, X1), (ALPHA, c(1)))
    assert mul(X3, X1) == lin((ALPHA, mul(X1, X3)), (ALPHA2, X3), (ALPHA2, mul(X1, X1)), (ALPHA2, X1))
    assert mul(X3, X2) == lin(
        (1, mul(X2, X3)), (ALPHA2, mul(X1, X3)), (ALPHA2, X3), (1, mul(X1, X2)),
        (ALPHA, mul(X1, X1)), (ALPHA2, X1), (1, X2), (1, c(1)),
    )


def test_substitution_is_triangular(sec21_tower):
    T = sec21_tower
    X1 = T.add(T.variable(1), T.constant(1))
    f = T.word_poly(Word(1, (1, 1)))
    assert T.substitute(f, {1: X1}) == T.mul(X1, X1)
    with pytest.raises(TowerError):
        T.substitute(f, {1: T.variable(2)})


# -- vanishing ideal


def test_vanishing_generators_of_the_frobenius_tower():
    tower = OreTower(get_preset("f4-sec21-2var"))
    tower.vanishing_gens()
    assert tower.format_vanishing(1) == "Y1^3 - Y1"
    assert tower.format_vanishing(2) == "Y2^4 - Y2"
    assert tower.vanishing_degrees() == [3, 4]


def test_vanishing_generators_of_other_towers():
    classical = OreTower(get_preset("classical-2^1-3"))
    assert [classical.format_vanishing(i) for i in (1, 2, 3)] == ["t1^2 - t1", "t2^2 - t2", "t3^2 - t3"]
    line = OreTower(get_preset("f8-frobenius-1"))
    assert line.format_vanishing(1) == "t^4 - t"


def test_vanishing_generators_vanish_everywhere(weyl5):
    for g in weyl5.vanishing_gens():
        assert weyl5.is_identically_zero(g)


def test_linear_search_with_an_inner_derivation(f4):
    spec = TowerSpec(f4, (LevelSpec("t", frobenius=1, inner=ALPHA),))
    tower = OreTower(spec)
    g = tower.vanishing_univariate(1)
    ring = tower.level_rings[1]
    assert g.leading == 1
    assert all(ring.evaluate(g, a) == 0 for a in f4.elements())
    assert g == ring.min_vanishing_poly(f4.elements())


def random_element(tower, rng, caps):
    terms = {}
    for exps in itertools.product(*(range(c + 1) for c in caps)):
        if rng.random() < 0.4:
            terms[exps] = rng.randrange(tower.field.q)
    return tower.from_terms(terms)


def test_reduction_detects_exactly_the_vanishing_polynomials(rng):
    tower = OreTower(get_preset("f4-sec21-2var"))
    g1, g2 = tower.vanishing_gens()
    cases = [g1, g2, tower.mul(tower.variable(2), g1), tower.mul(g1, tower.variable(2))]
    for _ in range(60):
        a, b = random_element(tower, rng, (1, 1)), random_element(tower, rng, (4, 1))
        member = tower.add(tower.mul(a, g1), tower.mul(b, g2))
        cases.append(member)
        cases.append(tower.add(member, random_element(tower, rng, (1, 2))))
        cases.append(random_element(tower, rng, (4, 5)))
    for f in cases:
        reduced = tower.reduce_mod_vanishing(f)
        assert tower.is_zero(reduced) == tower.is_identically_zero(f)
        for point in tower.field.points(2):
            assert tower.eval_normal(reduced, point) == tower.eval_normal(f, point)


# -- ring laws and evaluation identities


def test_level_maps_on_examples(weyl101):
    double = OreTower(get_preset("f4-frobenius-double"))
    alpha_t1 = double.from_terms({(1,): ALPHA}, 1)
    assert double.sigma_apply(2, alpha_t1) == double.from_terms({(1,): ALPHA2}, 1)
    x_squared = weyl101.from_terms({(2,): 1}, 1)
    assert weyl101.delta_apply(2, x_squared) == weyl101.from_terms({(1,): 2}, 1)
    X, Y = weyl101.variable(1), weyl101.variable(2)
    assert weyl101.sub(weyl101.mul(Y, X), weyl101.mul(X, Y)) == weyl101.constant(1)


@pytest.mark.parametrize("preset, caps", [
    ("weyl-f5", (2, 2)), ("f4-frobenius-double", (2, 2)), ("f4-sec21-3var", (1, 1, 1)),
])
def test_tower_product_is_associative_and_distributive(rng, preset, caps):
    tower = OreTower(get_preset(preset))
    for _ in range(15):
        f, g, h = (random_element(tower, rng, caps) for _ in range(3))
        assert tower.mul(tower.mul(f, g), h) == tower.mul(f, tower.mul(g, h))
        assert tower.mul(f, tower.add(g, h)) == tower.add(tower.mul(f, g), tower.mul(f, h))
        assert tower.mul(tower.add(f, g), h) == tower.add(tower.mul(f, h), tower.mul(g, h))


def test_low_degree_monomials_associate():
    tower = OreTower(get_preset("f4-frobenius-double"))
    monomials = [
        tower.from_terms({exps: c})
        for exps in itertools.product(range(3), repeat=2) if sum(exps) <= 2
        for c in (1, ALPHA)
    ]
    for f in monomials:
        for g in monomials:
            for h in monomials:
                assert tower.mul(tower.mul(f, g), h) == tower.mul(f, tower.mul(g, h))


@pytest.mark.parametrize("preset, caps", [
    ("f4-frobenius-2", (2, 2)), ("f4-frobenius-double", (2, 2)), ("weyl-f5", (2, 2)), ("f4-sec21-3var", (1, 1, 1)),
])
def test_last_coordinate_is_a_right_root(rng, preset, caps):
    tower = OreTower(get_preset(preset))
    n = tower.n
    for _ in range(4):
        f = random_element(tower, rng, caps)
        for point in tower.field.points(n):
            shifted = tower.sub(tower.variable(n), tower.constant(point[-1]))
            assert tower.eval_normal(tower.mul(f, shifted), point) == 0


@pytest.mark.parametrize("preset", ["f4-frobenius-2", "f4-frobenius-double"])
def test_second_variable_times_shifted_first(preset):
    tower = OreTower(get_preset(preset))
    field = tower.field
    for a1, a2 in field.points(2):
        f = tower.mul(tower.variable(2), tower.sub(tower.variable(1), tower.constant(a1)))
        expected = field.sub(
            field.mul(tower.sigma_on_field(1, a2), a1),
            field.mul(tower.sigma_on_field(2, a1), a2),
        )
        assert tower.eval_normal(f, (a1, a2)) == expected


# -- tower consistency


def test_presets_are_consistent():
    for name in ("weyl-f5", "f4-frobenius-2", "f4-frobenius-double", "f4-sec21-3var", "classical-3^1-2"):
        assert tower_validate(get_preset(name)).ok


def test_inconsistent_towers_are_reported(f4):
    shifted = TowerSpec(f4, (LevelSpec("t1", frobenius=1), LevelSpec("t2", sigma_images={1: {(1,): 1, (0,): 1}})))
    assert not tower_validate(shifted).ok
    derived = TowerSpec(f4, (LevelSpec("t1", frobenius=1), LevelSpec("t2", delta_images={1: {(0,): 1}})))
    assert not tower_validate(derived).ok


def test_structural_tower_errors(f4):
    with pytest.raises(TowerError):
        OreTower(TowerSpec(f4, ()))
    with pytest.raises(TowerError):
        OreTower(TowerSpec(f4, (LevelSpec("t"), LevelSpec("t"))))
    with pytest.raises(TowerError):
        OreTower(TowerSpec(f4, (LevelSpec("t1", sigma_images={1: {(1,): 1}}),)))


# -- text forms


TOWER_TEXT = """\
# the double Frobenius tower
field 2^2:1,1,1
var t1 sigma_K=frob^1
var t2 sigma_K=frob^1 delta_K=0
sigma t1 = 1:1
"""


def test_tower_text_round_trip():
    spec = parse_tower(TOWER_TEXT)
    assert spec.names == ["t1", "t2"]
    assert spec.levels[1].sigma_images == {1: {(1,): 1}}
    assert parse_tower(format_tower(spec)) == spec
    weyl = parse_tower("field 5^1\nvar X\nvar Y\ndelta X = 1\n")
    assert parse_tower(format_tower(weyl)) == weyl


@pytest.mark.parametrize("text", [
    "var t\n",
    "field 2^2\n",
    "field 2^2\nvar t sigma_K=frob\n",
    "field 2^2\nvar t1\nvar t2\nsigma t3 = 1\n",
    "field 2^2\nvar t\nfoo bar\n",
    "field 2^2\nvar t1\nvar t2\ndelta t1 = 5\n",
])
def test_malformed_tower_files(text):
    with pytest.raises(TowerError):
        parse_tower(text)


def test_term_and_word_text(f4):
    terms = parse_terms("1:1 + 3:0,1 + 1:1", 2, f4)
    assert terms == {(1, 0): 0, (0, 1): 3}
    assert format_terms(terms) == "3:0,1"
    assert parse_word("2 t2 t1", ["X", "Y"]) == Word(2, (2, 1))
    assert parse_word("Y^2 * X", ["X", "Y"]) == Word(1, (2, 2, 1))
    with pytest.raises(InputError):
        parse_word("Z", ["X", "Y"])
