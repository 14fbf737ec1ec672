"""Named towers used throughout the docs and tests.

``get_preset`` also understands ``classical-<p>^<m>-<n>``: n commuting
variables over F_{p^m} with sigma = id and delta = 0.
"""

import re
from typing import Callable, Dict

from src.config import get_settings
from src.errors import InputError
from src.fields import make_field
from src.oretower import LevelSpec, TowerSpec
from src.rings import DerivationPolynomialRing
from src.skewpoly import SkewPolyRing

# F_4 = F_2(a) with a^2 = a + 1
F4_MODULUS = (1, 1, 1)


def weyl(p: int | None = None) -> TowerSpec:
    """F_p[X][Y; id, d/dX] as a two-level tower: YX = XY + 1."""
    p = p or get_settings().weyl_prime
    return TowerSpec(
        make_field(p, 1),
        (LevelSpec("X"), LevelSpec("Y", delta_images={1: {(0,): 1}})),
    )


def weyl_algebra(p: int | None = None) -> SkewPolyRing:
    """The same algebra as the univariate ring C[Y; id, d/dX] over C = F_p[X]."""
    p = p or get_settings().weyl_prime
    return SkewPolyRing(DerivationPolynomialRing(p, "X"), variable="Y")


def f4_frobenius(n: int = 2, names: str = "t") -> TowerSpec:
    """F_4[t_1; frob][t_2]...[t_n]: Frobenius on the first level, higher levels untwisted."""
    levels = tuple(LevelSpec(f"{names}{i}", frobenius=1 if i == 1 else 0) for i in range(1, n + 1))
    return TowerSpec(make_field(2, 2, F4_MODULUS), levels)


def f4_double_frobenius() -> TowerSpec:
    """F_4[t_1; frob][t_2; frob'] with frob'(t_1) = t_1."""
    return TowerSpec(
        make_field(2, 2, F4_MODULUS),
        (LevelSpec("t1", frobenius=1), LevelSpec("t2", frobenius=1)),
    )


def frobenius_line(p: int, m: int) -> TowerSpec:
    return TowerSpec(make_field(p, m), (LevelSpec("t", frobenius=1),))


def classical(p: int, m: int, n: int) -> TowerSpec:
    return TowerSpec(make_field(p, m), tuple(LevelSpec(f"t{i}") for i in range(1, n + 1)))


PRESETS: Dict[str, Callable[[], TowerSpec]] = {
    "weyl": lambda: weyl(),
    "weyl-f101": lambda: weyl(101),
    "weyl-f5": lambda: weyl(5),
    "f4-frobenius-1": lambda: f4_frobenius(1),
    "f4-frobenius-2": lambda: f4_frobenius(2),
    "f4-frobenius-3": lambda: f4_frobenius(3),
    "f4-frobenius-double": f4_double_frobenius,
    "f4-sec21-2var": lambda: f4_frobenius(2, names="Y"),
    "f4-sec21-3var": lambda: f4_frobenius(3, names="Y"),
    "f8-frobenius-1": lambda: frobenius_line(2, 3),
    "f9-frobenius-1": lambda: frobenius_line(3, 2),
}

CLASSICAL_PATTERN = re.compile(r"^classical-(\d+)\^(\d+)-(\d+)$")


def get_preset(name: str) -> TowerSpec:
    """Return the named tower.

    :raises InputError: unknown name.
    """
    if name in PRESETS:
        return PRESETS[name]()
    match = CLASSICAL_PATTERN.match(name)
    if match:
        p, m, n = (int(g) for g in match.groups())
        if n < 1:
            raise InputError(f"preset {name!r} needs at least one variable")
        return classical(p, m, n)
    known = ", ".join(sorted(PRESETS)) + ", classical-<p>^<m>-<n>"
    raise InputError(f"unknown preset {name!r}; available: {known}")
