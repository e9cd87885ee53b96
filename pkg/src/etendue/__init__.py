"""Finite left-cancellative categories, ordered groupoids, and the sites and
sheaves that relate them."""

from ._verdict import Check, NotLeftCancellative, TooLarge, ValidationError, Verdict, Violation
from .bridge import G, L, eta, gl, kappa, rho
from .fincat import FiniteCategory, Functor, NaturalTransformation
from .ogpd import DoubleFunctor, OrderedGroupoid
from .sheaves import DoublePresheaf, Presheaf
from .sites import EhresmannSiteMorphism, GrothendieckSiteMorphism
from .topology import EhresmannTopology, GrothendieckTopology, Sieve, VerticalSieve

__version__ = "0.1.0"

__all__ = [
    "Check", "DoubleFunctor", "DoublePresheaf", "EhresmannSiteMorphism", "EhresmannTopology",
    "FiniteCategory", "Functor", "G", "GrothendieckSiteMorphism", "GrothendieckTopology", "L",
    "NaturalTransformation", "NotLeftCancellative", "OrderedGroupoid", "Presheaf", "Sieve",
    "TooLarge", "ValidationError", "Verdict", "VerticalSieve", "Violation", "eta", "gl", "kappa", "rho",
]
