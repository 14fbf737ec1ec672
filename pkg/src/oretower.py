"""Iterated Ore extensions R_n = K[t_1; s_1, d_1][t_2; s_2, d_2]...[t_n; s_n, d_n].

An element of R_i is a :class:`~src.skewpoly.SkewPoly` in t_i whose
coefficients are elements of R_{i-1}; R_0 = K holds integer field codes.
This recursive normal form is authoritative and ``to_terms``/``from_terms``
give the flat view ``{(l_1, ..., l_n): coefficient}`` of the monomials
``c * t_1^l_1 * ... * t_n^l_n``.

Each sigma_i / delta_i is given by its action on K (Frobenius power, zero or
inner derivation) and by the images of the lower variables, and is extended
to R_{i-1} as a homomorphism / sigma_i-derivation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import partial
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.errors import FieldError, InputError, ResourceLimitError, TowerError
from src.fields import FieldEndomorphism, FieldSpec, format_field, multiplicative_generator, parse_field
from src.rings import FrobeniusField
from src.skewpoly import FiniteSkewRing, SkewPoly, SkewPolyRing


Terms = Dict[Tuple[int, ...], int]
MultiPoly = Any  # SkewPoly for n >= 1, an int code at level 0
Point = Tuple[int, ...]
LogCallback = Callable[[str, str, str], None]


@dataclass(frozen=True)
class LevelSpec:
    """One level t_i of a tower.

    ``sigma_images``/``delta_images`` map a lower variable index j < i to the
    flat terms of sigma_i(t_j) / delta_i(t_j) in R_{i-1}.  Missing sigma
    images mean sigma_i(t_j) = t_j, missing delta images mean zero.
    """

    name: str
    frobenius: int = 0
    inner: int = 0
    sigma_images: Mapping[int, Terms] = dc_field(default_factory=dict)
    delta_images: Mapping[int, Terms] = dc_field(default_factory=dict)


@dataclass(frozen=True)
class TowerSpec:
    field: FieldSpec
    levels: Tuple[LevelSpec, ...]

    @property
    def n(self) -> int:
        return len(self.levels)

    @property
    def names(self) -> List[str]:
        return [level.name for level in self.levels]


@dataclass(frozen=True)
class Word:
    """coefficient * t_{letters[0]} * t_{letters[1]} * ..., letters 1-based and unnormalized."""

    coefficient: int = 1
    letters: Tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return len(self.letters)

    @property
    def is_ordered(self) -> bool:
        return list(self.letters) == sorted(self.letters)

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], coefficient: int = 1) -> "Word":
        letters = tuple(j for j, e in enumerate(exponents, start=1) for _ in range(e))
        return cls(coefficient, letters)


@dataclass
class ValidationReport:
    violations: List[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class OreTower:
    """Arithmetic, evaluation and vanishing ideal of one tower."""

    def __init__(self, spec: TowerSpec) -> None:
        if not spec.levels:
            raise TowerError("a tower needs at least one level")
        names = spec.names
        if len(set(names)) != len(names):
            raise TowerError(f"duplicate variable names in {names}")
        self.spec = spec
        self.field = spec.field
        self.n = spec.n
        self.names = names
        self.rings: List[Any] = [FrobeniusField(self.field)]
        self.level_rings: List[Optional[FiniteSkewRing]] = [None]
        self._frob: List[Optional[FieldEndomorphism]] = [None]
        self._inner: List[int] = [0]
        self._sigma_img: List[Dict[int, Any]] = [{}]
        self._delta_img: List[Dict[int, Any]] = [{}]
        self._vars_fixed: List[bool] = [True]
        self._delta_zero: List[bool] = [True]
        self._powers: Dict[Tuple[str, int, int, int], Any] = {}
        self._vanishing: Optional[List[SkewPoly]] = None

        for i, level in enumerate(spec.levels, start=1):
            for j in list(level.sigma_images) + list(level.delta_images):
                if not 1 <= j < i:
                    raise TowerError(f"level {level.name} can only map lower variables, got t{j}")
            frob = FieldEndomorphism(self.field, level.frobenius)
            inner = self.field.check(level.inner)
            # images are built in R_{i-1}, which is complete at this point
            sigma_img = {
                j: self.from_terms(level.sigma_images[j], i - 1)
                if j in level.sigma_images
                else self.variable(j, i - 1)
                for j in range(1, i)
            }
            delta_img = {}
            for j, terms in level.delta_images.items():
                image = self.from_terms(terms, i - 1)
                if not self.is_zero(image, i - 1):
                    delta_img[j] = image
            self._frob.append(frob)
            self._inner.append(inner)
            self._sigma_img.append(sigma_img)
            self._delta_img.append(delta_img)
            self._vars_fixed.append(all(sigma_img[j] == self.variable(j, i - 1) for j in sigma_img))
            self._delta_zero.append((inner == 0 or frob.is_identity) and not delta_img)
            self.level_rings.append(
                FiniteSkewRing(FrobeniusField(self.field, level.frobenius, inner), variable=level.name)
            )
            self.rings.append(
                SkewPolyRing(
                    self.rings[i - 1],
                    twist=partial(self.sigma_apply, i),
                    derivation=partial(self.delta_apply, i),
                    variable=level.name,
                    delta_zero=self._delta_zero[i],
                )
            )

    # -- element helpers

    def zero(self, level: Optional[int] = None) -> MultiPoly:
        level = self.n if level is None else level
        return 0 if level == 0 else SkewPoly(())

    def is_zero(self, f: MultiPoly, level: Optional[int] = None) -> bool:
        level = self.n if level is None else level
        return f == 0 if level == 0 else f.is_zero

    def lift(self, x: MultiPoly, src: int, dst: int) -> MultiPoly:
        """Embed an element of R_src into R_dst (src <= dst)."""
        for level in range(src + 1, dst + 1):
            x = self.rings[level].constant(x)
        return x

    def constant(self, c: int, level: Optional[int] = None) -> MultiPoly:
        level = self.n if level is None else level
        return self.lift(self.field.check(c), 0, level)

    def variable(self, j: int, level: Optional[int] = None) -> MultiPoly:
        level = self.n if level is None else level
        if not 1 <= j <= level:
            raise TowerError(f"variable t{j} does not exist in R_{level}")
        return self.lift(self.rings[j].var(), j, level)

    def add(self, f: MultiPoly, g: MultiPoly, level: Optional[int] = None) -> MultiPoly:
        return self.rings[self.n if level is None else level].add(f, g)

    def sub(self, f: MultiPoly, g: MultiPoly, level: Optional[int] = None) -> MultiPoly:
        return self.rings[self.n if level is None else level].sub(f, g)

    def neg(self, f: MultiPoly, level: Optional[int] = None) -> MultiPoly:
        return self.rings[self.n if level is None else level].neg(f)

    def mul(self, f: MultiPoly, g: MultiPoly, level: Optional[int] = None) -> MultiPoly:
        """Normal-form product; t_i * r = sigma_i(r) t_i + delta_i(r) for r in R_{i-1}."""
        return self.rings[self.n if level is None else level].mul(f, g)

    def power(self, f: MultiPoly, k: int, level: Optional[int] = None) -> MultiPoly:
        level = self.n if level is None else level
        if level == 0:
            return self.field.pow(f, k)
        return self.rings[level].power(f, k)

    def total(self, fs: Iterable[MultiPoly], level: Optional[int] = None) -> MultiPoly:
        level = self.n if level is None else level
        result = self.zero(level)
        for f in fs:
            result = self.add(result, f, level)
        return result

    # -- sigma_i and delta_i on R_{i-1}

    def sigma_on_field(self, i: int, x: int) -> int:
        return self._frob[i](x)

    def delta_on_field(self, i: int, x: int) -> int:
        c = self._inner[i]
        if c == 0:
            return 0
        f = self.field
        return f.mul(c, f.sub(x, self._frob[i](x)))

    def sigma_apply(self, i: int, f: MultiPoly) -> MultiPoly:
        """sigma_i(f) for f in R_{i-1}."""
        if self._vars_fixed[i]:
            if self._frob[i].is_identity:
                return f
            return self._map_constants(f, i - 1, self._frob[i])
        return self._sigma_in(i, f, i - 1)

    def delta_apply(self, i: int, f: MultiPoly) -> MultiPoly:
        """delta_i(f) for f in R_{i-1}."""
        if self._delta_zero[i]:
            return self.zero(i - 1)
        return self._delta_in(i, f, i - 1)

    def _map_constants(self, f: MultiPoly, level: int, fn: Callable[[int], int]) -> MultiPoly:
        # fn is a bijection fixing 0, so no coefficient vanishes
        if level == 0:
            return fn(f)
        return SkewPoly(tuple(self._map_constants(c, level - 1, fn) for c in f.coeffs))

    def _sigma_in(self, i: int, f: MultiPoly, d: int) -> MultiPoly:
        # f in R_d, d <= i-1; result in R_{i-1}
        if self._vars_fixed[i]:
            return self.lift(self._map_constants(f, d, self._frob[i]), d, i - 1)
        if d == 0:
            return self.lift(self._frob[i](f), 0, i - 1)
        ring = self.rings[i - 1]
        result = self.zero(i - 1)
        for k, c in enumerate(f.coeffs):
            if self.is_zero(c, d - 1):
                continue
            term = self._sigma_in(i, c, d - 1)
            if k:
                term = ring.mul(term, self._image_power(i, d, k))
            result = ring.add(result, term)
        return result

    def _image_power(self, i: int, d: int, k: int) -> MultiPoly:
        key = ("sigma", i, d, k)
        if key not in self._powers:
            self._powers[key] = self.power(self._sigma_img[i][d], k, i - 1)
        return self._powers[key]

    def _variable_power(self, d: int, k: int, level: int) -> MultiPoly:
        key = ("var", level, d, k)
        if key not in self._powers:
            self._powers[key] = self.power(self.variable(d, level), k, level)
        return self._powers[key]

    def _delta_power(self, i: int, d: int, k: int) -> MultiPoly:
        # delta_i(t_d^k) = sigma_i(t_d) delta_i(t_d^{k-1}) + delta_i(t_d) t_d^{k-1}
        key = ("delta", i, d, k)
        if key in self._powers:
            return self._powers[key]
        ring = self.rings[i - 1]
        if k == 0:
            value = self.zero(i - 1)
        else:
            value = ring.add(
                ring.mul(self._sigma_img[i][d], self._delta_power(i, d, k - 1)),
                ring.mul(self._delta_img[i].get(d, self.zero(i - 1)), self._variable_power(d, k - 1, i - 1)),
            )
        self._powers[key] = value
        return value

    def _delta_in(self, i: int, f: MultiPoly, d: int) -> MultiPoly:
        if d == 0:
            return self.lift(self.delta_on_field(i, f), 0, i - 1)
        ring = self.rings[i - 1]
        result = self.zero(i - 1)
        for k, c in enumerate(f.coeffs):
            if self.is_zero(c, d - 1):
                continue
            # delta(c t^k) = sigma(c) delta(t^k) + delta(c) t^k
            if k:
                result = ring.add(result, ring.mul(self._sigma_in(i, c, d - 1), self._delta_power(i, d, k)))
            low = self._delta_in(i, c, d - 1)
            if not self.is_zero(low, i - 1):
                result = ring.add(result, ring.mul(low, self._variable_power(d, k, i - 1)))
        return result

    # -- flat views

    def from_terms(self, terms: Mapping[Tuple[int, ...], int], level: Optional[int] = None) -> MultiPoly:
        """Element of R_level from flat terms; short exponent vectors are padded with zeros."""
        level = self.n if level is None else level
        field = self.field
        if level == 0:
            value = 0
            for exps, c in terms.items():
                if any(exps):
                    raise TowerError(f"monomial {exps} does not belong to K")
                value = field.add(value, field.check(c))
            return value
        groups: Dict[int, Terms] = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if any(e < 0 for e in exps):
                raise TowerError(f"negative exponent in {exps}")
            if len(exps) > level:
                if any(exps[level:]):
                    raise TowerError(f"monomial {exps} uses variables above R_{level}")
                exps = exps[:level]
            exps = exps + (0,) * (level - len(exps))
            group = groups.setdefault(exps[-1], {})
            group[exps[:-1]] = field.add(group.get(exps[:-1], 0), field.check(c))
        if not groups:
            return self.zero(level)
        return self.rings[level].make(
            self.from_terms(groups.get(k, {}), level - 1) for k in range(max(groups) + 1)
        )

    def to_terms(self, f: MultiPoly, level: Optional[int] = None) -> Terms:
        level = self.n if level is None else level
        if level == 0:
            return {(): f} if f else {}
        out: Terms = {}
        for k, c in enumerate(f.coeffs):
            for exps, v in self.to_terms(c, level - 1).items():
                out[exps + (k,)] = v
        return out

    def degree(self, f: MultiPoly, level: Optional[int] = None) -> int | float:
        terms = self.to_terms(f, level)
        return max((sum(e) for e in terms), default=float("-inf"))

    def top_variable(self, f: MultiPoly, level: Optional[int] = None) -> int:
        """Largest j with t_j occurring in f, 0 for constants."""
        top = 0
        for exps in self.to_terms(f, level):
            for j, e in enumerate(exps, start=1):
                if e:
                    top = max(top, j)
        return top

    def word_poly(self, word: Word, level: Optional[int] = None) -> MultiPoly:
        """Normal form of the product coefficient * t_{l_1} * t_{l_2} * ..."""
        level = self.n if level is None else level
        result = self.constant(word.coefficient, level)
        for j in word.letters:
            result = self.mul(result, self.variable(j, level), level)
        return result

    # -- evaluation

    def check_point(self, point: Sequence[int]) -> Point:
        if len(point) != self.n:
            raise InputError(f"point {tuple(point)} has {len(point)} coordinates, tower has {self.n}")
        return tuple(self.field.check(a) for a in point)

    def _evaluate_level(self, i: int, f: MultiPoly, a: int) -> MultiPoly:
        # remainder of f in R_i on the right by t_i - a: sum b_k N_k(a), N_k(a) in K
        base = self.rings[i - 1]
        norms = self.level_rings[i].norms(a)
        value = self.zero(i - 1)
        for k, b in enumerate(f.coeffs):
            if self.is_zero(b, i - 1):
                continue
            nk = norms[k]
            if nk != 1:
                b = base.mul(b, self.constant(nk, i - 1))
            value = base.add(value, b)
        return value

    def eval_normal(self, f: MultiPoly, point: Sequence[int]) -> int:
        """Representative in K of f modulo I_n(point): right division by t_n - a_n, ..., t_1 - a_1."""
        point = self.check_point(point)
        value = f
        for i in range(self.n, 0, -1):
            value = self._evaluate_level(i, value, point[i - 1])
        return value

    def division_chain(self, f: MultiPoly, point: Sequence[int]) -> List[MultiPoly]:
        """The successive remainders f_1 in R_{n-1}, ..., f_n in K computed by explicit right division."""
        point = self.check_point(point)
        chain, value = [], f
        for i in range(self.n, 0, -1):
            ring = self.rings[i]
            _, r = ring.right_divmod(value, ring.linear(self.constant(point[i - 1], i - 1)))
            value = r.coeffs[0] if r.coeffs else self.zero(i - 1)
            chain.append(value)
        return chain

    def eval_word(self, word: Word, point: Sequence[int]) -> int:
        """Evaluate a word by peeling its rightmost letter.

        For w = w' t_j with every letter of w' at most j, the value is that of
        w' a_j, normalized in R_j and re-expanded into ordered monomials.  A
        word whose peeled letter sits below a letter of its prefix is first
        rewritten as a sum of ordered monomials t_1^l_1 ... t_n^l_n.
        :raises TowerError: if a rewriting step does not lower the degree.
        """
        point = self._check_word(word, point)
        letters = tuple(word.letters)
        if len(letters) > 1 and max(letters[:-1]) > letters[-1]:
            return self.eval_normal(self.word_poly(word), point)
        return self._eval_word(self.field.check(word.coefficient), letters, point)

    def eval_word_literal(self, word: Word, point: Sequence[int]) -> int:
        """Peel the rightmost letter without moving it past higher letters.

        For w = w' t_j the value is that of w' a_j, normalized in the subtower
        of the letters of w'.  Differs from ``eval_word`` only on words that are
        not ordered monomials; in the Weyl tower ``Y X`` gives a*b here.
        """
        point = self._check_word(word, point)
        return self._eval_word(self.field.check(word.coefficient), tuple(word.letters), point)

    def _check_word(self, word: Word, point: Sequence[int]) -> Point:
        point = self.check_point(point)
        for j in word.letters:
            if not 1 <= j <= self.n:
                raise TowerError(f"word uses t{j}, tower has {self.n} variables")
        return point

    def _eval_word(self, coefficient: int, letters: Tuple[int, ...], point: Point) -> int:
        field = self.field
        if coefficient == 0 or not letters:
            return coefficient
        if len(letters) == 1:
            return field.mul(coefficient, point[letters[0] - 1])
        prefix, j = letters[:-1], letters[-1]
        level = max(prefix)
        reduced = self.mul(
            self.word_poly(Word(coefficient, prefix), level), self.constant(point[j - 1], level), level
        )
        value = 0
        for exps, c in self.to_terms(reduced, level).items():
            if sum(exps) >= len(letters):
                raise TowerError(f"rewriting {letters} did not lower the degree")
            value = field.add(value, self._eval_word(c, Word.from_exponents(exps).letters, point))
        return value

    def eval_words(self, words: Iterable[Word], point: Sequence[int]) -> int:
        value = 0
        for word in words:
            value = self.field.add(value, self.eval_word(word, point))
        return value

    # -- good points

    def _commutator_rhs(self, i: int, j: int, point: Point) -> int:
        # sigma_j(a_i) a_j + delta_j(a_i)
        field, a_i = self.field, point[i - 1]
        return field.add(field.mul(self.sigma_on_field(j, a_i), point[j - 1]), self.delta_on_field(j, a_i))

    def good_point_test(self, point: Sequence[int]) -> bool:
        """(t_j t_i)(P) = sigma_j(a_i) a_j + delta_j(a_i) for all i < j."""
        point = self.check_point(point)
        for j in range(2, self.n + 1):
            for i in range(1, j):
                product = self.mul(self.variable(j), self.variable(i))
                if self.eval_normal(product, point) != self._commutator_rhs(i, j, point):
                    return False
        return True

    def ideal_condition(self, point: Sequence[int]) -> bool:
        """Every t_j (t_i - a_i), i < j, evaluates to zero along the division chain."""
        point = self.check_point(point)
        for j in range(2, self.n + 1):
            for i in range(1, j):
                shifted = self.sub(self.variable(i), self.constant(point[i - 1]))
                if self.eval_normal(self.mul(self.variable(j), shifted), point) != 0:
                    return False
        return True

    def good_point_conditions(self, point: Sequence[int]) -> Tuple[bool, bool]:
        """(ideal condition, commutator condition); the two always agree."""
        return self.ideal_condition(point), self.good_point_test(point)

    def good_points(self) -> List[Tuple[Point, bool]]:
        return [(point, self.good_point_test(point)) for point in self.field.points(self.n)]

    # -- vanishing ideal

    def vanishing_univariate(self, i: int, on_log: Optional[LogCallback] = None) -> SkewPoly:
        """Monic G_i over K of least degree with G_i(a) = 0 for every a in K.

        :raises ResourceLimitError: nothing found up to degree q * n.
        """
        ring, field = self.level_rings[i], self.field
        name = self.names[i - 1]
        if ring.delta_zero:
            s = ring.base.theta.s
            degree = field.q if s == 0 else (field.p - 1) * field.m + 1 if s == 1 else None
            if degree is not None:
                closed = ring.make([0, field.neg(1)] + [0] * (degree - 2) + [1])
                if all(ring.evaluate(closed, a) == 0 for a in field.elements()):
                    if on_log:
                        on_log("vanish", f"{name}: closed form", f"degree {degree}")
                    return closed

        norms = [ring.norms(a) for a in field.elements()]
        cap = field.q * self.n
        for d in range(1, cap + 1):
            system = np.array([[seq[k] for k in range(d)] + [field.neg(seq[d])] for seq in norms], dtype=int)
            reduced = field.gf(system).row_reduce().view(np.ndarray)
            solution = _solve_reduced(reduced, d)
            if solution is None:
                continue
            candidate = ring.make(solution + [1])
            if all(ring.evaluate(candidate, a) == 0 for a in field.elements()):
                if on_log:
                    on_log("vanish", f"{name}: linear search", f"degree {d}")
                return candidate
        raise ResourceLimitError(f"no vanishing polynomial in {name} of degree <= {cap}")

    def vanishing_gens(self, on_log: Optional[LogCallback] = None) -> List[MultiPoly]:
        """G_1, ..., G_n as elements of R_n."""
        if self._vanishing is None:
            self._vanishing = [self.vanishing_univariate(i, on_log) for i in range(1, self.n + 1)]
        return [self._embed_univariate(i, g, self.n) for i, g in enumerate(self._vanishing, start=1)]

    def vanishing_degrees(self) -> List[int]:
        self.vanishing_gens()
        return [len(g) - 1 for g in self._vanishing]

    def _embed_univariate(self, i: int, g: SkewPoly, level: int) -> MultiPoly:
        terms = {}
        for k, c in enumerate(g.coeffs):
            if c:
                exps = [0] * level
                exps[i - 1] = k
                terms[tuple(exps)] = c
        return self.from_terms(terms, level)

    def reduce_mod_vanishing(self, f: MultiPoly) -> MultiPoly:
        """Right-divide by G_n in t_n, then reduce every coefficient by G_{n-1}, ..., G_1."""
        self.vanishing_gens()
        return self._reduce(f, self.n)

    def _reduce(self, f: MultiPoly, level: int) -> MultiPoly:
        if level == 0:
            return f
        ring = self.rings[level]
        g = self._embed_univariate(level, self._vanishing[level - 1], level)
        _, r = ring.right_divmod(f, g)
        return ring.make(self._reduce(c, level - 1) for c in r.coeffs)

    def is_identically_zero(self, f: MultiPoly) -> bool:
        return all(self.eval_normal(f, point) == 0 for point in self.field.points(self.n))

    # -- change of variables

    def substitute(self, f: MultiPoly, assignments: Mapping[int, MultiPoly]) -> MultiPoly:
        """Replace t_j by assignments[j] (which must lie in R_j) and multiply out left to right.

        :raises TowerError: an assignment for t_j uses a variable above t_j.
        """
        images = []
        for j in range(1, self.n + 1):
            image = assignments.get(j)
            if image is None:
                images.append(self.variable(j))
                continue
            if self.top_variable(image) > j:
                raise TowerError(f"assignment for {self.names[j - 1]} is not in R_{j}")
            images.append(image)
        for j in assignments:
            if not 1 <= j <= self.n:
                raise TowerError(f"no variable t{j} to substitute")
        result = self.zero()
        for exps, c in self.to_terms(f).items():
            term = self.constant(c)
            for j, e in enumerate(exps, start=1):
                for _ in range(e):
                    term = self.mul(term, images[j - 1])
            result = self.add(result, term)
        return result

    # -- text

    def parse_word(self, text: str) -> Word:
        return parse_word(text, self.names)

    def format_pretty(self, f: MultiPoly) -> str:
        return format_pretty(self.to_terms(f), self.names)

    def format_vanishing(self, i: int) -> str:
        """``G_i`` as ``lead - rest``, e.g. ``Y1^3 - Y1``."""
        self.vanishing_gens()
        g = self._vanishing[i - 1]
        ring = self.level_rings[i]
        lead = ring.monomial(1, len(g) - 1)
        rest = ring.neg(ring.sub(g, lead))
        names = [self.names[i - 1]]
        text = format_pretty({(len(g) - 1,): 1}, names)
        if rest.is_zero:
            return text
        return text + " - " + format_pretty({(k,): c for k, c in enumerate(rest.coeffs) if c}, names)


def _solve_reduced(reduced: np.ndarray, unknowns: int) -> Optional[List[int]]:
    # reduced row echelon form of [A | b]; None if inconsistent, free variables set to 0
    solution = [0] * unknowns
    for row in reduced:
        nonzero = np.flatnonzero(row[:unknowns])
        if nonzero.size == 0:
            if row[unknowns] != 0:
                return None
            continue
        solution[int(nonzero[0])] = int(row[unknowns])
    return solution


def tower_validate(spec: TowerSpec) -> ValidationReport:
    """Check sigma_i / delta_i against normalized products t_j*c and t_k*t_j in R_{i-1}.

    Structural errors raise :class:`TowerError`; consistency failures are
    collected in the report.
    """
    tower = OreTower(spec)
    report = ValidationReport()
    field = tower.field
    g = multiplicative_generator(field)
    for i in range(2, tower.n + 1):
        ring = tower.rings[i - 1]
        name = tower.names[i - 1]
        sigma = partial(tower.sigma_apply, i)
        delta = partial(tower.delta_apply, i)
        c = tower.constant(g, i - 1)
        pairs = [(tower.variable(j, i - 1), c, f"{tower.names[j - 1]}*{g}") for j in range(1, i)]
        pairs += [
            (tower.variable(k, i - 1), tower.variable(j, i - 1), f"{tower.names[k - 1]}*{tower.names[j - 1]}")
            for j in range(1, i)
            for k in range(j + 1, i)
        ]
        for x, y, label in pairs:
            xy = ring.mul(x, y)
            if sigma(xy) != ring.mul(sigma(x), sigma(y)):
                report.violations.append(f"sigma of {name} is not multiplicative on {label}")
            leibniz = ring.add(ring.mul(sigma(x), delta(y)), ring.mul(delta(x), y))
            if delta(xy) != leibniz:
                report.violations.append(f"delta of {name} breaks the Leibniz rule on {label}")
    return report


# -- text forms

_TERM = re.compile(r"^\s*(\d+)\s*(?::\s*([\d\s,]*))?\s*$")


def parse_terms(text: str, nvars: int, field: FieldSpec) -> Terms:
    """Parse ``coef:l1,...,lk + ...``; a bare ``coef`` is a constant.

    Exponent vectors shorter than ``nvars`` are padded with zeros and repeated
    monomials are added in the field.
    """
    terms: Terms = {}
    text = text.strip()
    if text in ("", "0"):
        return terms
    for raw in text.split("+"):
        match = _TERM.match(raw)
        if not match:
            raise InputError(f"cannot parse term {raw.strip()!r}")
        coef = field.check(int(match.group(1)))
        exps_text = (match.group(2) or "").replace(" ", "")
        exps = tuple(int(e) for e in exps_text.split(",") if e != "")
        if len(exps) > nvars:
            raise InputError(f"term {raw.strip()!r} has more than {nvars} exponents")
        exps = exps + (0,) * (nvars - len(exps))
        terms[exps] = field.add(terms.get(exps, 0), coef)
    return terms


def _term_key(exps: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    return sum(exps), tuple(reversed(exps))


def format_terms(terms: Mapping[Tuple[int, ...], int]) -> str:
    items = [(e, c) for e, c in terms.items() if c]
    if not items:
        return "0"
    items.sort(key=lambda item: _term_key(item[0]))
    return " + ".join(f"{c}:" + ",".join(str(e) for e in exps) if exps else str(c) for exps, c in items)


def format_pretty(terms: Mapping[Tuple[int, ...], int], names: Sequence[str]) -> str:
    """Human form, highest degree first: ``Y1^3 + 2*Y1*Y2 + 1``."""
    items = [(e, c) for e, c in terms.items() if c]
    if not items:
        return "0"
    items.sort(key=lambda item: _term_key(item[0]), reverse=True)
    parts = []
    for exps, c in items:
        factors = [names[j] if e == 1 else f"{names[j]}^{e}" for j, e in enumerate(exps) if e]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def _resolve_name(token: str, names: Sequence[str]) -> int:
    if token in names:
        return names.index(token) + 1
    match = re.fullmatch(r"t(\d+)", token)
    if match and 1 <= int(match.group(1)) <= len(names):
        return int(match.group(1))
    raise InputError(f"unknown variable {token!r}; expected one of {list(names)}")


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse ``[coef] x y^2 z`` (letters separated by spaces or ``*``) into a Word."""
    tokens = [tok for tok in re.split(r"[\s*]+", text.strip()) if tok]
    coefficient = 1
    if tokens and tokens[0].isdigit():
        coefficient = int(tokens.pop(0))
    letters: List[int] = []
    for tok in tokens:
        name, _, exponent = tok.partition("^")
        try:
            count = int(exponent) if exponent else 1
        except ValueError as e:
            raise InputError(f"bad exponent in {tok!r}") from e
        letters.extend([_resolve_name(name, names)] * count)
    return Word(coefficient, tuple(letters))


def format_word(word: Word, names: Sequence[str]) -> str:
    letters = " ".join(names[j - 1] for j in word.letters)
    if word.coefficient == 1 and letters:
        return letters
    return f"{word.coefficient} {letters}".strip()


def parse_tower(text: str) -> TowerSpec:
    """Parse the line-based tower file (``field``, ``var``, ``sigma``, ``delta`` lines)."""
    field: Optional[FieldSpec] = None
    levels: List[Dict[str, Any]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if keyword == "field":
                if field is not None:
                    raise TowerError("field given twice")
                field = parse_field(rest)
            elif keyword == "var":
                if field is None:
                    raise TowerError("'field' must come before 'var'")
                levels.append(_parse_var(rest, field))
            elif keyword in ("sigma", "delta"):
                if not levels:
                    raise TowerError(f"'{keyword}' line before any 'var'")
                target, eq, poly = rest.partition("=")
                if not eq:
                    raise TowerError(f"expected '{keyword} <var> = <poly>'")
                names = [lv["name"] for lv in levels[:-1]]
                j = _resolve_name(target.strip(), names)
                levels[-1][f"{keyword}_images"][j] = parse_terms(poly, len(names), field)
            else:
                raise TowerError(f"unknown keyword {keyword!r}")
        except (InputError, FieldError) as e:
            raise TowerError(f"line {lineno}: {e}") from e
    if field is None:
        raise TowerError("tower file has no 'field' line")
    if not levels:
        raise TowerError("tower file declares no variables")
    return TowerSpec(field, tuple(LevelSpec(**level) for level in levels))


def _parse_var(rest: str, field: FieldSpec) -> Dict[str, Any]:
    parts = rest.split()
    if not parts:
        raise TowerError("'var' needs a name")
    level: Dict[str, Any] = {"name": parts[0], "frobenius": 0, "inner": 0, "sigma_images": {}, "delta_images": {}}
    for part in parts[1:]:
        key, _, value = part.partition("=")
        if key == "sigma_K" and value.startswith("frob^") and value[5:].isdigit():
            level["frobenius"] = int(value[5:]) % field.m
        elif key == "sigma_K" and value == "id":
            level["frobenius"] = 0
        elif key == "delta_K" and value == "0":
            level["inner"] = 0
        elif key == "delta_K" and value.startswith("inner:") and value[6:].isdigit():
            level["inner"] = field.check(int(value[6:]))
        else:
            raise TowerError(f"cannot parse {part!r}")
    return level


def format_tower(spec: TowerSpec) -> str:
    lines = [f"field {format_field(spec.field)}"]
    for i, level in enumerate(spec.levels, start=1):
        delta = "0" if level.inner == 0 else f"inner:{level.inner}"
        lines.append(f"var {level.name} sigma_K=frob^{level.frobenius} delta_K={delta}")
        for keyword, images in (("sigma", level.sigma_images), ("delta", level.delta_images)):
            for j in sorted(images):
                padded = {tuple(e) + (0,) * (i - 1 - len(e)): c for e, c in images[j].items()}
                lines.append(f"{keyword} {spec.levels[j - 1].name} = {format_terms(padded)}")
    return "\n".join(lines) + "\n"
