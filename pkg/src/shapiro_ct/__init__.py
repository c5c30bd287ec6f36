"""Exact constant-term moments of Rudin-Shapiro-type polynomials."""
from .arith import LaurentPoly, RationalFunction, charpoly, reconstruct_rational
from .errors import CapacityError, ConfigError, DominanceError, MultiplicityError, ReconstructionError
from .oracle import ct_moment_brute, parseval_check, rs_poly
from .recurrence import Recurrence
from .scheme import (
    Term,
    TransitionSystem,
    build_closure,
    build_scheme,
    canonicalize,
    genfun,
    iterate_sequence,
    moment_genfun,
    rewrite_step,
)

__version__ = "0.1.0"
