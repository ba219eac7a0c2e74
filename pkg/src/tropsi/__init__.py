"""Weighted tropical psi-classes on moduli of heavy/light weighted rational curves."""

from .combinatorics import PsiExponents, SetPartition, WeightVector, multinomial, tlm
from .divisors import K_constant, boundary_divisor, f_N_w, weil_divisor
from .fan import Cycle, check_balancing, moduli_fan
from .psi import (
    PsiProductQuery,
    degree,
    intersect_product,
    intersect_recursive,
    psi_class,
    psi_class_pushforward,
)
from .trees import CombinatorialType, Split, enumerate_types

__version__ = "0.1.0"

__all__ = [
    "CombinatorialType",
    "Cycle",
    "K_constant",
    "PsiExponents",
    "PsiProductQuery",
    "SetPartition",
    "Split",
    "WeightVector",
    "boundary_divisor",
    "check_balancing",
    "degree",
    "enumerate_types",
    "f_N_w",
    "intersect_product",
    "intersect_recursive",
    "moduli_fan",
    "multinomial",
    "psi_class",
    "psi_class_pushforward",
    "tlm",
    "weil_divisor",
]
