"""Univariate Ore polynomials C[t; sigma, delta].

A :class:`SkewPoly` stores left coefficients, index i holding the coefficient
of t^i, and is multiplied with the rule ``t*c = sigma(c)*t + delta(c)``.  The
ring object carries sigma and delta, so the same value type serves field
coefficients, F_p[X] (Weyl algebra) and the levels of an Ore tower, where the
coefficients are themselves skew polynomials.

:class:`FiniteSkewRing` adds what needs a finite coefficient field:
conjugacy classes, centralizers, pseudo-linear maps and vanishing polynomials.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from src.errors import InputError, InvariantViolation, RingError
from src.fields import multiplicative_generator
from src.rings import CoefficientRing, FrobeniusField, parse_frobenius_field


NEG_INF = float("-inf")
"""Degree of the zero polynomial."""


@dataclass(frozen=True)
class SkewPoly:
    coeffs: Tuple[Any, ...] = ()

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Any:
        if not self.coeffs:
            raise RingError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __len__(self) -> int:
        return len(self.coeffs)


class NormSequence:
    """Lazily extended N_0(a), N_1(a), ... with N_{i+1} = sigma(N_i) a + delta(N_i)."""

    def __init__(self, ring: "SkewPolyRing", a: Any) -> None:
        self.ring = ring
        self.a = a
        self._values: List[Any] = [ring.base.one()]

    def __getitem__(self, i: int) -> Any:
        base, ring = self.ring.base, self.ring
        while len(self._values) <= i:
            prev = self._values[-1]
            value = base.mul(ring.twist(prev), self.a)
            if not ring.delta_zero:
                value = base.add(value, ring.derivation(prev))
            self._values.append(value)
        return self._values[i]

    def take(self, k: int) -> List[Any]:
        if k < 0:
            raise InputError(f"norm count must be >= 0, got {k}")
        self.__getitem__(k)
        return self._values[: k + 1]


class SkewPolyRing(CoefficientRing):
    """The Ore extension ``base[t; twist, derivation]``.

    ``twist`` and ``derivation`` act on base elements and default to the
    base ring's own sigma and delta.  Used as the coefficient ring of a
    further extension the ring itself has trivial sigma and delta; Ore towers
    pass their own maps instead.
    """

    def __init__(
        self,
        base: CoefficientRing,
        twist: Optional[Callable[[Any], Any]] = None,
        derivation: Optional[Callable[[Any], Any]] = None,
        variable: str = "t",
        delta_zero: Optional[bool] = None,
    ) -> None:
        super().__init__(f"{base.name}[{variable}]")
        self.base = base
        self.variable = variable
        self.twist = twist or base.sigma
        self.derivation = derivation or base.delta
        if delta_zero is None:
            delta_zero = base.delta_is_zero if derivation is None else False
        self.delta_zero = delta_zero

    # -- construction

    def make(self, coeffs: Iterable[Any]) -> SkewPoly:
        values = list(coeffs)
        is_zero = self.base.is_zero
        while values and is_zero(values[-1]):
            values.pop()
        return SkewPoly(tuple(values))

    def zero(self) -> SkewPoly:
        return SkewPoly(())

    def one(self) -> SkewPoly:
        return SkewPoly((self.base.one(),))

    def constant(self, c: Any) -> SkewPoly:
        return self.make((c,))

    def var(self) -> SkewPoly:
        return SkewPoly((self.base.zero(), self.base.one()))

    def monomial(self, c: Any, k: int) -> SkewPoly:
        return self.make([self.base.zero()] * k + [c])

    def linear(self, a: Any) -> SkewPoly:
        """t - a."""
        return SkewPoly((self.base.neg(a), self.base.one()))

    # -- ring operations

    def add(self, f: SkewPoly, g: SkewPoly) -> SkewPoly:
        if len(f) < len(g):
            f, g = g, f
        add = self.base.add
        out = list(f.coeffs)
        for i, c in enumerate(g.coeffs):
            out[i] = add(out[i], c)
        return self.make(out)

    def neg(self, f: SkewPoly) -> SkewPoly:
        return SkewPoly(tuple(self.base.neg(c) for c in f.coeffs))

    def scale(self, c: Any, f: SkewPoly) -> SkewPoly:
        """Left multiplication by a coefficient."""
        mul = self.base.mul
        return self.make(mul(c, x) for x in f.coeffs)

    def _t_times(self, coeffs: List[Any]) -> List[Any]:
        base = self.base
        out = [base.zero()] + [self.twist(c) for c in coeffs]
        if not self.delta_zero:
            for j, c in enumerate(coeffs):
                out[j] = base.add(out[j], self.derivation(c))
        return out

    def mul(self, f: SkewPoly, g: SkewPoly) -> SkewPoly:
        if f.is_zero or g.is_zero:
            return self.zero()
        base = self.base
        acc = [base.zero()] * (len(f) + len(g) - 1)
        row = list(g.coeffs)
        for i, fi in enumerate(f.coeffs):
            if i:
                row = self._t_times(row)
            if base.is_zero(fi):
                continue
            for j, c in enumerate(row):
                acc[j] = base.add(acc[j], base.mul(fi, c))
        return self.make(acc)

    def power(self, f: SkewPoly, k: int) -> SkewPoly:
        if k < 0:
            raise InputError(f"negative power {k}")
        result, square = self.one(), f
        while k:
            if k & 1:
                result = self.mul(result, square)
            k >>= 1
            if k:
                square = self.mul(square, square)
        return result

    def sigma(self, f: SkewPoly) -> SkewPoly:
        return f

    def delta(self, f: SkewPoly) -> SkewPoly:
        return self.zero()

    @property
    def sigma_is_identity(self) -> bool:
        return True

    @property
    def delta_is_zero(self) -> bool:
        return True

    def is_zero(self, f: SkewPoly) -> bool:
        return f.is_zero

    def is_unit(self, f: SkewPoly) -> bool:
        return len(f) == 1 and self.base.is_unit(f.coeffs[0])

    def inverse(self, f: SkewPoly) -> SkewPoly:
        if not self.is_unit(f):
            return super().inverse(f)
        return self.constant(self.base.inverse(f.coeffs[0]))

    # -- division and evaluation

    def right_divmod(self, f: SkewPoly, g: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
        """Return (q, r) with f = q*g + r and deg r < deg g.

        :raises RingError: g is zero, or sigma^k of its leading coefficient is not a unit.
        """
        if g.is_zero:
            raise RingError("right division by the zero polynomial")
        base = self.base
        dg = len(g) - 1
        if len(f) - 1 < dg:
            return self.zero(), f
        remainder = list(f.coeffs)
        quotient = [base.zero()] * (len(f) - dg)
        # shifted[k] holds the coefficients of t^k * g, whose top entry is sigma^k(lc(g))
        shifted = [list(g.coeffs)]
        while len(remainder) - 1 >= dg:
            k = len(remainder) - 1 - dg
            while len(shifted) <= k:
                shifted.append(self._t_times(shifted[-1]))
            top = shifted[k][-1]
            if base.is_one(top):
                c = remainder[-1]
            elif base.is_unit(top):
                c = base.mul(remainder[-1], base.inverse(top))
            else:
                raise RingError(f"leading coefficient {base.format(top)} is not invertible")
            quotient[k] = base.add(quotient[k], c)
            for j, x in enumerate(shifted[k]):
                remainder[j] = base.sub(remainder[j], base.mul(c, x))
            size = len(remainder)
            remainder = list(self.make(remainder).coeffs)
            if len(remainder) >= size:
                raise RingError("right division did not lower the degree")
        return self.make(quotient), self.make(remainder)

    def right_quotient(self, f: SkewPoly, g: SkewPoly) -> SkewPoly:
        return self.right_divmod(f, g)[0]

    def right_remainder(self, f: SkewPoly, g: SkewPoly) -> SkewPoly:
        return self.right_divmod(f, g)[1]

    def norms(self, a: Any) -> NormSequence:
        return NormSequence(self, a)

    def norm_sequence(self, a: Any, k: int) -> List[Any]:
        return NormSequence(self, a).take(k)

    def evaluate(self, f: SkewPoly, a: Any, norms: Optional[NormSequence] = None) -> Any:
        """f(a) = sum b_i N_i(a), the remainder of f on the right by t - a."""
        base = self.base
        if f.is_zero:
            return base.zero()
        norms = norms or NormSequence(self, a)
        value = base.zero()
        for i, b in enumerate(f.coeffs):
            if not base.is_zero(b):
                value = base.add(value, base.mul(b, norms[i]))
        return value

    # -- text

    def format(self, f: SkewPoly) -> str:
        if f.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(f.coeffs):
            if self.base.is_zero(c):
                continue
            text = self.base.format(c)
            if " " in text:
                text = f"({text})"
            if i == 0:
                terms.append(text)
            elif self.base.is_one(c):
                terms.append(self.variable if i == 1 else f"{self.variable}^{i}")
            elif i == 1:
                terms.append(f"{text}*{self.variable}")
            else:
                terms.append(f"{text}*{self.variable}^{i}")
        return " + ".join(terms)

    def format_csv(self, f: SkewPoly) -> str:
        if f.is_zero:
            return "0"
        return ",".join(self.base.format(c) for c in f.coeffs)


@dataclass(frozen=True)
class PseudoLinearMap:
    """T_a(x) = sigma(x) a + delta(x)."""

    ring: "FiniteSkewRing"
    a: int

    def __call__(self, x: int) -> int:
        f = self.ring.field
        value = f.mul(self.ring.twist(x), self.a)
        if not self.ring.delta_zero:
            value = f.add(value, self.ring.derivation(x))
        return value


@dataclass(frozen=True)
class GordonMotzkinReport:
    degree: int
    representatives: Tuple[int, ...]
    kernel_dims: Tuple[int, ...]
    root_classes: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.kernel_dims)

    @property
    def bounds_hold(self) -> bool:
        return len(self.root_classes) <= self.degree and self.total <= self.degree


class FiniteSkewRing(SkewPolyRing):
    """F_q[t; frob^s, delta] with delta zero or inner."""

    def __init__(self, base: FrobeniusField, variable: str = "t") -> None:
        if not isinstance(base, FrobeniusField):
            raise InputError("FiniteSkewRing needs a finite field coefficient ring")
        super().__init__(base, variable=variable)
        self.field = base.field

    # -- conjugacy

    def conjugate(self, a: int, x: int) -> int:
        """a^x = sigma(x) a x^-1 + delta(x) x^-1."""
        f = self.field
        if x == 0:
            raise RingError("conjugation by zero")
        x_inv = f.inv(x)
        value = f.mul(f.mul(self.twist(x), a), x_inv)
        if not self.delta_zero:
            value = f.add(value, f.mul(self.derivation(x), x_inv))
        return value

    def conjugacy_class(self, a: int) -> FrozenSet[int]:
        return frozenset(self.conjugate(a, x) for x in range(1, self.field.q))

    @cached_property
    def _classes(self) -> List[FrozenSet[int]]:
        seen: set[int] = set()
        classes = []
        for a in self.field.elements():
            if a in seen:
                continue
            cls = self.conjugacy_class(a)
            seen |= cls
            classes.append(cls)
        return classes

    def conjugacy_classes(self) -> List[FrozenSet[int]]:
        """The partition of the field into classes, ordered by smallest member."""
        return list(self._classes)

    def class_representatives(self) -> List[int]:
        return [min(cls) for cls in self._classes]

    def centralizer(self, a: int) -> FrozenSet[int]:
        """{x != 0 : a^x = a} with 0; checked to be a subfield."""
        members = frozenset([0]) | frozenset(
            x for x in range(1, self.field.q) if self.conjugate(a, x) == a
        )
        size = len(members)
        d = _log(size, self.field.p)
        if self.field.p**d != size or self.field.m % d or members != self.field.subfield(d):
            raise InvariantViolation(f"centralizer of {a} is not a subfield")
        return members

    # -- pseudo-linear maps

    def pseudo_linear(self, a: int) -> PseudoLinearMap:
        return PseudoLinearMap(self, a)

    def pseudo_linear_apply(self, a: int, x: int) -> int:
        return PseudoLinearMap(self, a)(x)

    def operator_eval(self, f: SkewPoly, a: int, x: int) -> int:
        """f(T_a)(x), equal to f(a^x) x for x != 0."""
        field, T = self.field, PseudoLinearMap(self, a)
        value, image = 0, x
        for i, c in enumerate(f.coeffs):
            if i:
                image = T(image)
            if c:
                value = field.add(value, field.mul(c, image))
        return value

    def kernel_dimension(self, f: SkewPoly, a: int) -> int:
        """dim over F_p of ker f(T_a)."""
        field = self.field
        columns = [field.digits(self.operator_eval(f, a, field.p**j)) for j in range(field.m)]
        matrix = galois.GF(field.p)(np.array(columns, dtype=int).T)
        return field.m - int(np.linalg.matrix_rank(matrix))

    def gordon_motzkin_report(self, f: SkewPoly) -> GordonMotzkinReport:
        """Classes holding roots of f and kernel dimensions of f(T_a) over C(a), one per class.

        :raises InputError: f is zero.
        :raises InvariantViolation: a bound of the Gordon-Motzkin theorem fails.
        """
        if f.is_zero:
            raise InputError("gordon_motzkin_report needs a nonzero polynomial")
        degree = len(f) - 1
        reps, dims, rooted = [], [], []
        for cls in self._classes:
            rep = min(cls)
            dim_fp = self.kernel_dimension(f, rep)
            centralizer_dim = _log(len(self.centralizer(rep)), self.field.p)
            if dim_fp % centralizer_dim:
                raise InvariantViolation(
                    f"kernel dimension {dim_fp} is not a multiple of [C({rep}):F_p] = {centralizer_dim}"
                )
            reps.append(rep)
            dims.append(dim_fp // centralizer_dim)
            if any(self.evaluate(f, b) == 0 for b in sorted(cls)):
                rooted.append(rep)
        report = GordonMotzkinReport(degree, tuple(reps), tuple(dims), tuple(rooted))
        if not report.bounds_hold:
            raise InvariantViolation(
                f"degree {degree} polynomial has roots in {len(rooted)} classes, kernel sum {report.total}"
            )
        return report

    # -- vanishing polynomials

    def min_vanishing_poly(self, points: Iterable[int]) -> SkewPoly:
        """Monic least left common multiple of the t - a, a in ``points``."""
        values = sorted(set(self.field.check(a) for a in points))
        if not values:
            raise InputError("min_vanishing_poly needs at least one point")
        h = self.one()
        for a in values:
            c = self.evaluate(h, a)
            if c != 0:
                h = self.mul(self.linear(self.conjugate(a, c)), h)
        return h

    def invariance_check(self, f: SkewPoly) -> bool:
        """f*x = sigma(x)*f on a field generator and f*t = t*f."""
        g = multiplicative_generator(self.field)
        if self.mul(f, self.constant(g)) != self.mul(self.constant(self.twist(g)), f):
            return False
        t = self.var()
        return self.mul(f, t) == self.mul(t, f)

    # -- text

    def describe(self) -> str:
        return self.base.describe()

    def parse(self, text: str) -> SkewPoly:
        return parse_poly(self, text)


def _log(n: int, p: int) -> int:
    d = 0
    while p**d < n:
        d += 1
    return d


def parse_ring_descriptor(text: str, variable: str = "t") -> FiniteSkewRing:
    """Parse ``p^m[:mod] sigma=frob^s delta=0|inner:c``."""
    return FiniteSkewRing(parse_frobenius_field(text), variable=variable)


def format_ring_descriptor(ring: FiniteSkewRing) -> str:
    return ring.describe()


def parse_poly(ring: FiniteSkewRing, text: str) -> SkewPoly:
    """Parse ``c0 + c1*t + c2*t^2`` or the CSV form ``c0,c1,c2``."""
    text = text.strip()
    if not text:
        raise InputError("empty polynomial")
    var = re.escape(ring.variable)
    if "," in text or re.fullmatch(r"\d+", text):
        return ring.make(ring.base.parse(c) for c in text.split(","))
    term_re = re.compile(rf"^(?:(\d+)\s*\*?\s*)?(?:({var})(?:\s*\^\s*(\d+))?)?$")
    coeffs: Dict[int, int] = {}
    field = ring.field
    for raw in text.split("+"):
        term = raw.strip()
        match = term_re.match(term)
        if not term or not match or (match.group(1) is None and match.group(2) is None):
            raise InputError(f"cannot parse term {term!r} of {text!r}")
        c = field.check(int(match.group(1))) if match.group(1) is not None else 1
        k = 0 if match.group(2) is None else int(match.group(3) or 1)
        coeffs[k] = field.add(coeffs.get(k, 0), c)
    top = max(coeffs)
    return ring.make(coeffs.get(k, 0) for k in range(top + 1))


def format_poly(ring: SkewPolyRing, f: SkewPoly) -> str:
    return ring.format(f)
