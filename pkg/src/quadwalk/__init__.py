"""Exact enumeration and kernel-method verification for quadrant walks,
centred on Gessel's model {E, NE, W, SW}."""
from .laurent import LaurentPolynomial
from .series import (
    TruncatedLaurentSeries,
    UnivariateSeries,
    extract_x_part,
    series_invert,
    series_mul,
    series_sqrt,
    substitute_boundary,
)
from .newton import newton_implicit
from .walks import StepModel, WalkTable, boundary_sections, count_walks, get_model, gessel_closed_form
from .kernel import Kernel, KernelRoots, build_kernel, group_orbit, kernel_roots, symmetric_extract
from .report import CheckResult, Report

__version__ = "0.1.0"
