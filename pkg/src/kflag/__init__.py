"""Exact torus-equivariant K-theory of finite flag varieties G/B."""

from ._kernels import BACKEND
from .charring import CharPoly, DenFactor, PolyRing, RatChar, q_specialize
from .errors import (
    ConditionStarViolated,
    DivisionByZero,
    KFlagError,
    MismatchError,
    NonPolynomialResult,
    PreconditionError,
    SpecializationError,
    UnsupportedType,
)
from .kclasses import FlagVariety, KClass, euler_char, flag_variety, pairing, tensor
from .rootsys import RootSystem, WeylElem, build_root_system

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CharPoly",
    "ConditionStarViolated",
    "DenFactor",
    "DivisionByZero",
    "FlagVariety",
    "KClass",
    "KFlagError",
    "MismatchError",
    "NonPolynomialResult",
    "PolyRing",
    "PreconditionError",
    "RatChar",
    "RootSystem",
    "SpecializationError",
    "UnsupportedType",
    "WeylElem",
    "build_root_system",
    "euler_char",
    "flag_variety",
    "pairing",
    "q_specialize",
    "tensor",
]
