from abc import ABC, abstractmethod
from typing import Any, Iterable, List

from src.errors import RingError


class CoefficientRing(ABC):
    """Abstract coefficient ring C of an Ore extension C[t; sigma, delta].

    ``sigma`` must be a ring endomorphism and ``delta`` a sigma-derivation:
    delta(ab) = sigma(a) delta(b) + delta(a) b.
    """

    is_field = False

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def zero(self) -> Any:
        raise NotImplementedError

    @abstractmethod
    def one(self) -> Any:
        raise NotImplementedError

    @abstractmethod
    def add(self, a, b):
        raise NotImplementedError

    @abstractmethod
    def neg(self, a):
        raise NotImplementedError

    @abstractmethod
    def mul(self, a, b):
        raise NotImplementedError

    @abstractmethod
    def sigma(self, a):
        raise NotImplementedError

    @abstractmethod
    def delta(self, a):
        raise NotImplementedError

    @abstractmethod
    def format(self, a) -> str:
        """Text form of an element."""
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def equal(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.equal(a, self.zero())

    def is_one(self, a) -> bool:
        return self.equal(a, self.one())

    def is_unit(self, a) -> bool:
        return False

    def inverse(self, a):
        raise RingError(f"{self.format(a)} is not invertible in {self.name}")

    @property
    def sigma_is_identity(self) -> bool:
        return False

    @property
    def delta_is_zero(self) -> bool:
        return False

    def from_int(self, n: int):
        """Image of an integer under Z -> C (double-and-add on ``one``)."""
        result, base = self.zero(), self.one()
        k = abs(n)
        while k:
            if k & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            k >>= 1
        return self.neg(result) if n < 0 else result

    def check_axioms(self, samples: Iterable) -> List[str]:
        """Spot-check sigma(1)=1, delta(1)=0, multiplicativity and Leibniz on ``samples``.

        :return: human-readable violations, empty when all checks pass.
        """
        problems: List[str] = []
        one = self.one()
        if not self.equal(self.sigma(one), one):
            problems.append("sigma(1) != 1")
        if not self.is_zero(self.delta(one)):
            problems.append("delta(1) != 0")
        values = list(samples)
        for a in values:
            for b in values:
                ab = self.mul(a, b)
                if not self.equal(self.sigma(ab), self.mul(self.sigma(a), self.sigma(b))):
                    problems.append(f"sigma not multiplicative on ({self.format(a)}, {self.format(b)})")
                leibniz = self.add(self.mul(self.sigma(a), self.delta(b)), self.mul(self.delta(a), b))
                if not self.equal(self.delta(ab), leibniz):
                    problems.append(f"Leibniz rule fails on ({self.format(a)}, {self.format(b)})")
        return problems
