import random

import pytest

from src.config import get_settings
from src.fields import make_field
from src.oretower import OreTower
from src.presets import F4_MODULUS, get_preset, weyl
from src.rings import FrobeniusField
from src.skewpoly import FiniteSkewRing

# F_4 codes: 0, 1, a = 2, a^2 = a + 1 = 3
ALPHA, ALPHA2 = 2, 3


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in ("ORECALC_CONFIG", "ORECALC_MAX_CODEWORDS", "ORECALC_SCAN_BLOCK",
                 "ORECALC_TABLE_LIMIT", "ORECALC_WEYL_PRIME", "ORECALC_VERBOSE"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def f4():
    return make_field(2, 2, F4_MODULUS)


@pytest.fixture
def f8():
    return make_field(2, 3)


@pytest.fixture
def f9():
    return make_field(3, 2)


@pytest.fixture
def frobenius_ring():
    """F_q[t; frob] for a field given as (p, m)."""
    def build(p, m):
        return FiniteSkewRing(FrobeniusField(make_field(p, m), 1))
    return build


@pytest.fixture
def f4_tower():
    return OreTower(get_preset("f4-frobenius-2"))


@pytest.fixture
def sec21_tower():
    return OreTower(get_preset("f4-sec21-3var"))


@pytest.fixture
def weyl101():
    return OreTower(weyl(101))


@pytest.fixture
def weyl5():
    return OreTower(weyl(5))


@pytest.fixture
def weyl_file(tmp_path):
    path = tmp_path / "weyl.tower"
    path.write_text("# YX = XY + 1\nfield 101^1\nvar X\nvar Y\ndelta X = 1\n", encoding="utf-8")
    return path
