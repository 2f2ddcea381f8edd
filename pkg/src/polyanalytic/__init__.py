"""Polyanalytic function algebras PA_q(K) on regular compact sets.

Elements are finite sums f = sum_j a_j(z) zbar^j with analytic a_j. The
package covers the truncated (diamond) product of PA(K)/<zbar^q>, sup-norm
and quotient-seminorm estimates, inverses, resolvents and spectra, the
two-variable lift, and recovery of the a_j from samples.
"""
from .algebra import (AnalyticComponent, PolyElement, QuotientElement, add, diamond_mul,
                      diamond_pow, evaluate, exact_order, full_mul, poly_mul,
                      truncate_to_order)
from .decompose import (SampleSet, convergence_check, fit_components, peel_components)
from .errors import (InputError, NotInvertibleError, NumericalError, ParseError,
                     PolyanalyticError)
from .kernels import BACKEND
from .parser import parse, parse_element, print_canonical, tokenize, lower
from .region import (Disc, NormEstimate, Rect, SamplingConfig, min_modulus, parse_region,
                     quotient_seminorm, sample, sup_norm)
from .series import TaylorSeries, series_from_polynomial, series_mul, series_reciprocal, tail_bound
from .spectral import (TwoVarLift, invert, is_invertible, lift, lift_eval, resolvent,
                       spectrum)

__version__ = "0.1.0"

__all__ = [
    "AnalyticComponent", "PolyElement", "QuotientElement", "add", "diamond_mul", "diamond_pow",
    "evaluate", "exact_order", "full_mul", "poly_mul", "truncate_to_order",
    "SampleSet", "convergence_check", "fit_components", "peel_components",
    "InputError", "NotInvertibleError", "NumericalError", "ParseError", "PolyanalyticError",
    "BACKEND",
    "parse", "parse_element", "print_canonical", "tokenize", "lower",
    "Disc", "NormEstimate", "Rect", "SamplingConfig", "min_modulus", "parse_region",
    "quotient_seminorm", "sample", "sup_norm",
    "TaylorSeries", "series_from_polynomial", "series_mul", "series_reciprocal", "tail_bound",
    "TwoVarLift", "invert", "is_invertible", "lift", "lift_eval", "resolvent", "spectrum",
]
