"""
simplest-cubic - Indecomposable integers in non-monogenic simplest cubic fields

This package constructs the fields Q(rho), rho^3 = a rho^2 + (a+3) rho + 1,
whose ring of integers is not Z[rho], enumerates the lattice points of the
two unit parallelepipeds and decides which of them are indecomposable, all
in exact rational arithmetic.
"""

__version__ = "0.1.0"
__author__ = "simplest-cubic developers"

from .classify import BasisDescriptor, Classification, UnsupportedFieldError, classify
from .codifferent import Codifferent, minimal_trace
from .field_core import FieldContext, FieldElement, SimplestCubicError, make_context
from .indecomposables import generate_theorem_list, is_indecomposable_bruteforce, verify_classification

__all__ = [
    "BasisDescriptor",
    "Classification",
    "Codifferent",
    "FieldContext",
    "FieldElement",
    "SimplestCubicError",
    "UnsupportedFieldError",
    "classify",
    "generate_theorem_list",
    "is_indecomposable_bruteforce",
    "make_context",
    "minimal_trace",
    "verify_classification",
]
