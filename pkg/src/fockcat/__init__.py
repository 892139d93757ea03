"""Truncated bosonic Fock spaces over finite-dimensional Hilbert spaces.

The package models a dagger compact category of dense complex matrices,
builds symmetric powers and the truncated Fock space ``F(A)`` on top of it,
and ships an executable suite of the algebraic laws these structures obey.
"""

from .errors import (
    DomainMismatch,
    ExprSyntaxError,
    ExprTypeError,
    FockcatError,
    IndexOutOfRange,
    InvariantViolation,
    LawViolation,
    ParseError,
)
from .tensorlinalg import (
    DEFAULT_TOL,
    UNIT,
    ZERO,
    Morphism,
    SpaceObject,
    base,
    biproduct_obj,
    compose,
    dagger,
    dual_obj,
    fock_obj,
    identity,
    max_abs_diff,
    state,
    tensor,
    tensor_obj,
)
from .fock import (
    DEFAULT_COEFFICIENTS,
    FockSpace,
    LadderCoefficients,
    coherent_state,
    comultiplication,
    counit_e,
    epsilon_single,
    fock_space,
    lowering,
    raising,
    restrict_total_degree,
    vacuum_state,
)
from .algebraic import ComonoidPresentation, MonoidPresentation, endo_exp, monoid_exp
from .laws import LawReport, SuiteConfig, run_suite
from .expr import Environment, eval_expr, parse_expr, pretty
from .jsonio import load_matrix, load_presentation

__version__ = "0.1.0"
