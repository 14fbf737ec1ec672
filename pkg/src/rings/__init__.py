"""Coefficient rings for Ore extensions."""

from .base_ring import CoefficientRing
from .field_ring import FrobeniusField, parse_frobenius_field
from .polynomial_ring import DerivationPolynomialRing
