import galois

from src.errors import FieldError

from .base_ring import CoefficientRing


class DerivationPolynomialRing(CoefficientRing):
    """F_p[X] with sigma = id and delta = d/dX, the coefficient ring of the Weyl algebra."""

    def __init__(self, p: int, variable: str = "X"):
        if not galois.is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        super().__init__(f"F_{p}[{variable}]")
        self.p = p
        self.variable = variable
        self.gf = galois.GF(p)

    def zero(self) -> galois.Poly:
        return galois.Poly.Zero(self.gf)

    def one(self) -> galois.Poly:
        return galois.Poly.One(self.gf)

    def generator(self) -> galois.Poly:
        return galois.Poly.Identity(self.gf)

    def from_coeffs(self, coeffs) -> galois.Poly:
        """Polynomial from coefficients listed constant term first."""
        return galois.Poly([c % self.p for c in coeffs][::-1] or [0], field=self.gf)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def sigma(self, a):
        return a

    def delta(self, a):
        if a.degree == 0:
            return self.zero()
        return a.derivative()

    def is_zero(self, a) -> bool:
        return a.degree == 0 and int(a.coeffs[0]) == 0

    def is_unit(self, a) -> bool:
        return a.degree == 0 and int(a.coeffs[0]) != 0

    def inverse(self, a):
        if not self.is_unit(a):
            return super().inverse(a)
        return galois.Poly([int(self.gf(int(a.coeffs[0])) ** -1)], field=self.gf)

    def from_int(self, n: int):
        return galois.Poly([n % self.p], field=self.gf)

    @property
    def sigma_is_identity(self) -> bool:
        return True

    def format(self, a) -> str:
        if self.is_zero(a):
            return "0"
        terms = []
        for degree, coeff in zip(a.nonzero_degrees, a.nonzero_coeffs):
            degree, coeff = int(degree), int(coeff)
            if degree == 0:
                terms.append(str(coeff))
                continue
            power = self.variable if degree == 1 else f"{self.variable}^{degree}"
            terms.append(power if coeff == 1 else f"{coeff}*{power}")
        return " + ".join(terms)
