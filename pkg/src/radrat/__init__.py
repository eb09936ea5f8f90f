"""radrat: rewrite integer programs with radical (and exp-of-radical)
coefficients into provably equivalent all-rational systems, with exact LP
solving and brute-force certification."""

from .canon import canonicalize
from .config import DEFAULT, Limits
from .field import RadicalBasis, RadicalNumber, evaluate, invert, sign, unify_bases
from .model import Coefficient, Constraint, Model, Variable
from .oracle import Box, check_equivalence, feasible_points, substitution_zero_check
from .parse import parse_coefficient, parse_model
from .rationalize import (
    RationalizedModel,
    TransformReport,
    check_q_independence,
    rationalize_constraint,
    rationalize_model,
    split_exp_groups,
)
from .simplex import Infeasible, Optimal, Unbounded, solve_lpr, verify_outcome
from .write import export_lp, write_model

__version__ = "0.1.0"

__all__ = [
    "Box",
    "Coefficient",
    "Constraint",
    "DEFAULT",
    "Infeasible",
    "Limits",
    "Model",
    "Optimal",
    "RadicalBasis",
    "RadicalNumber",
    "RationalizedModel",
    "TransformReport",
    "Unbounded",
    "Variable",
    "canonicalize",
    "check_equivalence",
    "check_q_independence",
    "evaluate",
    "export_lp",
    "feasible_points",
    "invert",
    "parse_coefficient",
    "parse_model",
    "rationalize_constraint",
    "rationalize_model",
    "sign",
    "solve_lpr",
    "split_exp_groups",
    "substitution_zero_check",
    "unify_bases",
    "verify_outcome",
    "write_model",
]
