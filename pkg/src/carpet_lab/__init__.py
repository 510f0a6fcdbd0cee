"""Doubling indices, ball-measure oracles and Lipschitz invariants for Bedford-McMullen carpets."""

from .classify import Verdict, class_flags, compare, dim_VE, multifractal_equal, profile, vsc_check
from .coding import Coding, all_codings, coding_of_point, in_VE, omega_class, pi
from .core import CarpetSpec, carpet, ell, invariants, is_non_doubling, validate
from .errors import CarpetLabError
from .index import Gauge, curve_coding, delta_lower, delta_upper, gamma_bounds, monte_carlo_delta
from .kernels import BACKEND
from .measure import ball_measure_bounds, big_u, k_of_r, mu_approx_square, sandwich_checks, xi
from .runlength import beta_parts, modified_run_length, run_length

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CarpetLabError",
    "CarpetSpec",
    "Coding",
    "Gauge",
    "Verdict",
    "all_codings",
    "ball_measure_bounds",
    "beta_parts",
    "big_u",
    "carpet",
    "class_flags",
    "coding_of_point",
    "compare",
    "curve_coding",
    "delta_lower",
    "delta_upper",
    "dim_VE",
    "ell",
    "gamma_bounds",
    "in_VE",
    "invariants",
    "is_non_doubling",
    "k_of_r",
    "modified_run_length",
    "monte_carlo_delta",
    "mu_approx_square",
    "multifractal_equal",
    "omega_class",
    "pi",
    "profile",
    "run_length",
    "sandwich_checks",
    "validate",
    "vsc_check",
    "xi",
]
