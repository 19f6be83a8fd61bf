"""Balayage of measures on the upper half-plane, Carleson constants, BMO norms
and the dyadic paraproduct algebra, with exact arithmetic wherever possible."""

from .dyadic import (
    DyadicInterval,
    HaarCoefficients,
    StepFunction,
    dilate,
    haar_coefficients,
    mean_on,
    project,
    relatives,
    square_function,
)
from .measure import (
    Atom,
    Measure,
    NormReport,
    Rect,
    Region,
    Segment,
    box_mass,
    carleson_constant,
    restrict,
    scale_measure,
    top_mass,
)
from .balayage import (
    PoissonBalayage,
    dyadic_balayage,
    poisson_eval,
    poisson_interval_mean,
    poisson_l1,
)
from .norms import bmo_estimate, bmod_norm_sq, l1_norm, l2_norm_sq, mean_oscillation
from .constructions import (
    balayage_measure_from_function,
    dyadic_counterexample,
    dyadic_log,
    poisson_staircase,
    rademacher,
)

__version__ = "0.1.0"

__all__ = [
    "DyadicInterval",
    "HaarCoefficients",
    "StepFunction",
    "dilate",
    "haar_coefficients",
    "mean_on",
    "project",
    "relatives",
    "square_function",
    "Atom",
    "Measure",
    "NormReport",
    "Rect",
    "Region",
    "Segment",
    "box_mass",
    "carleson_constant",
    "restrict",
    "scale_measure",
    "top_mass",
    "PoissonBalayage",
    "dyadic_balayage",
    "poisson_eval",
    "poisson_interval_mean",
    "poisson_l1",
    "balayage_measure_from_function",
    "dyadic_counterexample",
    "dyadic_log",
    "poisson_staircase",
    "rademacher",
    "bmo_estimate",
    "bmod_norm_sq",
    "l1_norm",
    "l2_norm_sq",
    "mean_oscillation",
]
