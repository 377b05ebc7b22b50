"""Exact Weil sums of binomials over finite fields and their spectra."""

from .cyclotomic import CycInt, Histogram, QuadDecomp
from .finite_field import FieldElement, FieldSpec, make_field, parse_field
from .weil import analyze, classify, exponent_classes, spectrum, tau_action, weil_sum

__all__ = [
    "CycInt",
    "FieldElement",
    "FieldSpec",
    "Histogram",
    "QuadDecomp",
    "analyze",
    "classify",
    "exponent_classes",
    "make_field",
    "parse_field",
    "spectrum",
    "tau_action",
    "weil_sum",
]
