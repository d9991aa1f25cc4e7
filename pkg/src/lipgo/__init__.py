"""Univariate global optimization with Lipschitz objectives or Lipschitz derivatives.

Twelve methods share one outer loop: piece-wise linear minorants (``PKC``,
``GE``, ``LT`` and their ``_LI`` variants) and smooth piece-wise quadratic
minorants built from first derivatives (``DKC``, ``DGE``, ``DLT`` and their
``_LI`` variants).

>>> from lipgo import method_from_label, pinter_problem
>>> result = method_from_label("DLT_LI", r=1.1).solve(pinter_problem(3.3611804993))
>>> abs(result.best_x - 3.3611804993) < 1e-3
True
"""

from .core import (
    ConfigurationError,
    DegeneratePlacement,
    EstimateViolated,
    Estimator,
    EvaluatorError,
    LipgoError,
    METHOD_LABELS,
    MethodConfig,
    Problem,
    RunError,
    RunResult,
    RunStatus,
    Scheme,
    Selector,
    Trial,
    validate_problem,
)
from .methods import Method, make_method, method_from_label
from .testbed.fixtures import load_fixture, parse_fixture, shipped_fixtures
from .testbed.pinter import pinter_problem, pinter_suite

__all__ = [
    "ConfigurationError",
    "DegeneratePlacement",
    "EstimateViolated",
    "Estimator",
    "EvaluatorError",
    "LipgoError",
    "METHOD_LABELS",
    "Method",
    "MethodConfig",
    "Problem",
    "RunError",
    "RunResult",
    "RunStatus",
    "Scheme",
    "Selector",
    "Trial",
    "load_fixture",
    "make_method",
    "method_from_label",
    "parse_fixture",
    "pinter_problem",
    "pinter_suite",
    "shipped_fixtures",
    "validate_problem",
]
