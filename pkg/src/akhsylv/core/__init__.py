"""Numerical core: dense kernels, cut domains and Akhiezer series data."""

from .akhiezer import CoefficientStream, RecurrenceTable, WeightSpec
from .cutdomain import CutDomain, Interval, parse_domain

__all__ = [
    "CoefficientStream",
    "CutDomain",
    "Interval",
    "RecurrenceTable",
    "WeightSpec",
    "parse_domain",
]
