"""Finite fields F_{p^m} with integer-coded elements.

An element is a plain ``int`` in ``[0, q)``.  Its little-endian base-p digits
are the coordinates in the power basis ``1, x, ..., x^{m-1}`` of the modulus
root, which is also the integer representation ``galois`` uses, so codes move
between the lookup tables kept here and ``galois.FieldArray`` values unchanged.

Fields are immutable descriptors and elements never point back at them: the
field is always passed explicitly.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Sequence, Tuple

import galois
import numpy as np

from src.config import get_settings
from src.errors import FieldError, RingError


FIELD_PATTERN = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*(?::\s*([\d\s,]+))?\s*$")


@dataclass(frozen=True)
class _Tables:
    add: List[List[int]]
    mul: List[List[int]]
    neg: List[int]
    inv: List[int]
    # frob[s][x] = x ** (p ** s) for 0 <= s < m
    frob: Tuple[List[int], ...]


@dataclass(frozen=True)
class FieldSpec:
    """The field F_p[x]/(modulus) with ``q = p**m`` elements.

    ``modulus`` lists coefficients from the constant term upwards and must be
    monic of degree ``m`` and irreducible over F_p.
    """

    p: int
    m: int
    modulus: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < 2 or not galois.is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if not isinstance(self.m, int) or self.m < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.m}")
        coeffs = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", coeffs)
        if len(coeffs) != self.m + 1:
            raise FieldError(f"modulus {list(coeffs)} does not have degree {self.m}")
        if any(c < 0 or c >= self.p for c in coeffs):
            raise FieldError(f"modulus coefficients must lie in [0, {self.p})")
        if coeffs[-1] != 1:
            raise FieldError(f"modulus {list(coeffs)} is not monic")
        if not self.modulus_poly.is_irreducible():
            raise FieldError(f"modulus {self.modulus_poly} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def modulus_poly(self) -> galois.Poly:
        return galois.Poly(list(self.modulus[::-1]), field=galois.GF(self.p))

    @cached_property
    def gf(self) -> type[galois.FieldArray]:
        """The ``galois`` field class with the same modulus."""
        if self.m == 1:
            return galois.GF(self.p)
        return galois.GF(self.q, irreducible_poly=self.modulus_poly)

    @cached_property
    def _tables(self) -> _Tables | None:
        if self.q > get_settings().table_limit:
            return None
        x = self.gf(np.arange(self.q))
        nonzero = x[1:]
        return _Tables(
            add=(x[:, None] + x[None, :]).view(np.ndarray).tolist(),
            mul=(x[:, None] * x[None, :]).view(np.ndarray).tolist(),
            neg=(-x).view(np.ndarray).tolist(),
            inv=[0] + (nonzero**-1).view(np.ndarray).tolist(),
            frob=tuple((x ** (self.p**s)).view(np.ndarray).tolist() for s in range(self.m)),
        )

    # -- arithmetic on codes; operands are trusted, see ``field_arith`` for checked calls

    def add(self, a: int, b: int) -> int:
        t = self._tables
        if t is not None:
            return t.add[a][b]
        return int(self.gf(a) + self.gf(b))

    def neg(self, a: int) -> int:
        t = self._tables
        if t is not None:
            return t.neg[a]
        return int(-self.gf(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        t = self._tables
        if t is not None:
            return t.mul[a][b]
        return int(self.gf(a) * self.gf(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise RingError(f"inverse of zero in {format_field(self)}")
        t = self._tables
        if t is not None:
            return t.inv[a]
        return int(self.gf(a) ** -1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        return int(self.gf(a) ** n)

    def frobenius(self, x: int, s: int = 1) -> int:
        """x ** (p ** s); the exponent is taken modulo m."""
        s %= self.m
        if s == 0:
            return x
        t = self._tables
        if t is not None:
            return t.frob[s][x]
        return int(self.gf(x) ** (self.p**s))

    # -- enumeration and encoding

    def elements(self) -> range:
        return range(self.q)

    def points(self, n: int) -> Iterator[Tuple[int, ...]]:
        """K^n in lexicographic order, last coordinate varying fastest."""
        return itertools.product(range(self.q), repeat=n)

    def check(self, x: int) -> int:
        if isinstance(x, galois.FieldArray):
            if not same_field(type(x), self.gf):
                raise FieldError(f"element of {type(x).name} used in {format_field(self)}")
            return int(x)
        if isinstance(x, (bool, float)) or not isinstance(x, (int, np.integer)):
            raise FieldError(f"field element must be an integer code, got {x!r}")
        if not 0 <= x < self.q:
            raise FieldError(f"element code {x} outside [0, {self.q}) for {format_field(self)}")
        return int(x)

    def digits(self, x: int) -> List[int]:
        """Power-basis coordinates of ``x`` (length m, constant term first)."""
        out = []
        for _ in range(self.m):
            x, d = divmod(x, self.p)
            out.append(d)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) != self.m:
            raise FieldError(f"expected {self.m} coordinates, got {len(digits)}")
        code = 0
        for d in reversed(digits):
            if not 0 <= d < self.p:
                raise FieldError(f"coordinate {d} outside [0, {self.p})")
            code = code * self.p + d
        return code

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime field."""
        return n % self.p

    def subfield(self, d: int) -> frozenset[int]:
        """Elements fixed by x -> x^{p^d}: the subfield of order p^gcd(d, m)."""
        return frozenset(x for x in self.elements() if self.frobenius(x, d) == x)

    def multiplicative_generator(self) -> int:
        return multiplicative_generator(self)

    def __str__(self) -> str:
        return format_field(self)


def same_field(a: type[galois.FieldArray], b: type[galois.FieldArray]) -> bool:
    if a.characteristic != b.characteristic or a.degree != b.degree:
        return False
    return a.degree == 1 or a.irreducible_poly == b.irreducible_poly


def make_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build a validated field.

    Without a modulus the lexicographically smallest monic irreducible of
    degree ``m`` is used (``x`` when m = 1).

    :raises FieldError: non-prime ``p``, bad degree, reducible or non-monic modulus.
    """
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if modulus is None:
        if m == 1:
            modulus = (0, 1)
        else:
            poly = galois.irreducible_poly(p, m, method="min")
            modulus = tuple(int(c) for c in poly.coeffs[::-1])
    return FieldSpec(p, m, tuple(modulus))


class FieldEndomorphism:
    """The Frobenius power x -> x^{p^s} of a field, 0 <= s < m."""

    def __init__(self, field: FieldSpec, s: int = 0) -> None:
        self.field = field
        self.s = s % field.m

    @property
    def is_identity(self) -> bool:
        return self.s == 0

    def __call__(self, x: int) -> int:
        return self.field.frobenius(x, self.s)

    def compose(self, other: "FieldEndomorphism") -> "FieldEndomorphism":
        if other.field != self.field:
            raise FieldError("cannot compose endomorphisms of different fields")
        return FieldEndomorphism(self.field, self.s + other.s)

    def power(self, k: int) -> "FieldEndomorphism":
        return FieldEndomorphism(self.field, self.s * k)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldEndomorphism) and (self.field, self.s) == (other.field, other.s)

    def __hash__(self) -> int:
        return hash((self.field, self.s))

    def __repr__(self) -> str:
        return f"FieldEndomorphism({format_field(self.field)}, s={self.s})"


_UNARY = {"neg", "inv"}


def field_arith(field: FieldSpec, op: str, a, b=None) -> int:
    """Checked arithmetic: ``op`` is one of add, sub, mul, div, neg, inv, pow.

    Operands may be integer codes or ``galois`` scalars of the same field; for
    ``pow`` the second operand is an integer exponent.

    :raises FieldError: unknown op, out-of-range code or an operand from another field.
    :raises RingError: inverse of (or division by) zero.
    """
    a = field.check(a)
    if op in _UNARY:
        return field.neg(a) if op == "neg" else field.inv(a)
    if b is None:
        raise FieldError(f"operation {op!r} needs two operands")
    if op == "pow":
        return field.pow(a, int(b))
    b = field.check(b)
    ops = {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}
    if op not in ops:
        raise FieldError(f"unsupported field operation: {op}")
    return ops[op](a, b)


def frobenius(field: FieldSpec, x: int, s: int = 1) -> int:
    return field.frobenius(field.check(x), s)


def enumerate_field(field: FieldSpec) -> List[int]:
    return list(field.elements())


def multiplicative_generator(field: FieldSpec) -> int:
    """Generator of F_q^* with the smallest integer code."""
    order = field.q - 1
    for code in range(1, field.q):
        if int(field.gf(code).multiplicative_order()) == order:
            return code
    raise FieldError(f"{format_field(field)} has no multiplicative generator")


# -- text forms


def parse_field(text: str) -> FieldSpec:
    """Parse ``p^m`` or ``p^m:c0,c1,...,cm``."""
    match = FIELD_PATTERN.match(text)
    if not match:
        raise FieldError(f"cannot parse field descriptor {text!r}")
    p, m = int(match.group(1)), int(match.group(2))
    tail = match.group(3)
    modulus = None
    if tail:
        try:
            modulus = [int(c) for c in tail.replace(" ", "").split(",") if c != ""]
        except ValueError as e:
            raise FieldError(f"bad modulus in {text!r}") from e
    return make_field(p, m, modulus)


def format_field(field: FieldSpec) -> str:
    return f"{field.p}^{field.m}:" + ",".join(str(c) for c in field.modulus)


def parse_element(field: FieldSpec, text: str) -> int:
    try:
        value = int(text.strip())
    except ValueError as e:
        raise FieldError(f"element code must be a decimal integer, got {text!r}") from e
    return field.check(value)


def format_element(x: int) -> str:
    return str(int(x))
