from typing import List

from src.errors import FieldError
from src.fields import FieldEndomorphism, FieldSpec, format_field, parse_element, parse_field

from .base_ring import CoefficientRing


class FrobeniusField(CoefficientRing):
    """A finite field with sigma = frob^s and delta zero or inner.

    The inner derivation for the constant c is delta(x) = c*x - sigma(x)*c.
    """

    is_field = True

    def __init__(self, field: FieldSpec, frobenius: int = 0, inner: int = 0):
        super().__init__(f"F_{field.q}")
        self.field = field
        self.theta = FieldEndomorphism(field, frobenius)
        self.inner = field.check(inner)

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return self.field.add(a, b)

    def neg(self, a: int) -> int:
        return self.field.neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.field.sub(a, b)

    def mul(self, a: int, b: int) -> int:
        return self.field.mul(a, b)

    def sigma(self, a: int) -> int:
        return self.theta(a)

    def delta(self, a: int) -> int:
        if self.delta_is_zero:
            return 0
        f = self.field
        return f.mul(self.inner, f.sub(a, self.theta(a)))

    def is_zero(self, a: int) -> bool:
        return a == 0

    def is_unit(self, a: int) -> bool:
        return a != 0

    def inverse(self, a: int) -> int:
        return self.field.inv(a)

    def from_int(self, n: int) -> int:
        return self.field.from_int(n)

    def format(self, a: int) -> str:
        return str(a)

    def parse(self, text: str) -> int:
        return parse_element(self.field, text)

    @property
    def sigma_is_identity(self) -> bool:
        return self.theta.is_identity

    @property
    def delta_is_zero(self) -> bool:
        # an inner derivation of a commutative field vanishes when sigma = id
        return self.inner == 0 or self.theta.is_identity

    def elements(self) -> List[int]:
        return list(self.field.elements())

    def describe(self) -> str:
        delta = "0" if self.inner == 0 else f"inner:{self.inner}"
        return f"{format_field(self.field)} sigma=frob^{self.theta.s} delta={delta}"


def parse_frobenius_field(text: str) -> FrobeniusField:
    """Parse ``p^m[:mod] sigma=frob^s delta=0|inner:c``; missing keys default to identity and zero."""
    parts = text.split()
    if not parts:
        raise FieldError("empty ring descriptor")
    field = parse_field(parts[0])
    frobenius, inner = 0, 0
    for part in parts[1:]:
        key, _, value = part.partition("=")
        if key == "sigma" and value.startswith("frob^"):
            frobenius = _int(value[len("frob^"):], part)
        elif key == "sigma" and value == "id":
            frobenius = 0
        elif key == "delta" and value == "0":
            inner = 0
        elif key == "delta" and value.startswith("inner:"):
            inner = _int(value[len("inner:"):], part)
        else:
            raise FieldError(f"unknown ring descriptor part {part!r}")
    return FrobeniusField(field, frobenius, inner)


def _int(text: str, part: str) -> int:
    try:
        return int(text)
    except ValueError as e:
        raise FieldError(f"expected an integer in {part!r}") from e
