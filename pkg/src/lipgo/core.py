"""Problem and run data model shared by the solvers, the oracle and the bench."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

Evaluator = Callable[[float], float]


class LipgoError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(LipgoError, ValueError):
    """Invalid method parameters or problem definition."""


class RunError(LipgoError, RuntimeError):
    """A solver run could not continue."""


class EvaluatorError(RunError):
    """The objective or its derivative failed or returned a non-finite value."""

    def __init__(self, message: str, x: float):
        super().__init__(f"{message} at x={x!r}")
        self.x = x


class DegeneratePlacement(RunError):
    """A new trial coincides with an existing abscissa."""


class EstimateViolated(RunError):
    """A trial point fell outside the open interval it was placed in.

    This happens only when the Lipschitz estimate in force is smaller than
    the observed slope (or curvature) on that interval.
    """


class Scheme(enum.Enum):
    GS = "GS"
    GS_D = "GS_D"


class Estimator(enum.Enum):
    KNOWN_CONSTANT = "KnownConstant"
    GLOBAL_ESTIMATE = "GlobalEstimate"
    LOCAL_TUNING = "LocalTuning"


class Selector(enum.Enum):
    MIN_CHARACTERISTIC = "MinCharacteristic"
    LOCAL_IMPROVEMENT = "LocalImprovement"


class RunStatus(enum.Enum):
    CONVERGED = "Converged"
    TRIAL_CAP_REACHED = "TrialCapReached"
    REJECTED = "Rejected"


@dataclass(frozen=True)
class Problem:
    """A univariate minimization problem on the closed interval ``[a, b]``.

    ``f`` and ``df`` must be deterministic.  They are called with Python
    floats by the solvers and with numpy arrays by the oracle, so evaluators
    written with numpy ufuncs serve both.
    """

    name: str
    a: float
    b: float
    f: Evaluator
    df: Optional[Evaluator] = None
    known_L: Optional[float] = None
    known_M: Optional[float] = None
    known_min_x: Optional[float] = None
    known_min_f: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or not self.a < self.b:
            raise ConfigurationError(
                f"problem {self.name!r}: need finite a < b, got [{self.a}, {self.b}]"
            )
        for attr in ("known_L", "known_M"):
            value = getattr(self, attr)
            if value is not None and not value > 0:
                raise ConfigurationError(f"problem {self.name!r}: {attr} must be positive")


@dataclass(frozen=True)
class Trial:
    x: float
    z: float
    dz: Optional[float] = None


@dataclass(frozen=True)
class MethodConfig:
    """Parameters of one of the twelve methods.

    ``eps`` and ``delta`` are in units of ``b - a`` when ``eps_relative`` is
    set.  ``delta=None`` means "same as eps".  ``local_fallback`` switches
    an exhausted local-improvement step (both neighbours of the incumbent no
    wider than delta) from "stop there" to a minimal-characteristic step.
    """

    scheme: Scheme = Scheme.GS
    estimator: Estimator = Estimator.LOCAL_TUNING
    selector: Selector = Selector.MIN_CHARACTERISTIC
    r: float = 1.1
    xi: float = 1e-8
    eps: float = 1e-4
    eps_relative: bool = True
    delta: Optional[float] = None
    max_trials: int = 10**6
    local_fallback: bool = False

    def __post_init__(self):
        if self.estimator is not Estimator.KNOWN_CONSTANT and not self.r > 1:
            raise ConfigurationError(f"reliability parameter r must exceed 1, got {self.r}")
        if not self.xi > 0:
            raise ConfigurationError(f"xi must be positive, got {self.xi}")
        if not self.eps > 0:
            raise ConfigurationError(f"eps must be positive, got {self.eps}")
        if self.delta is not None and not self.delta > 0:
            raise ConfigurationError(f"delta must be positive, got {self.delta}")
        if int(self.max_trials) != self.max_trials or self.max_trials < 2:
            raise ConfigurationError("max_trials must be an integer >= 2")

    def effective_eps(self, a: float, b: float) -> float:
        return self.eps * (b - a) if self.eps_relative else self.eps

    def effective_delta(self, a: float, b: float) -> float:
        if self.delta is None:
            return self.effective_eps(a, b)
        return self.delta * (b - a) if self.eps_relative else self.delta

    @property
    def label(self) -> str:
        return method_label(self.scheme, self.estimator, self.selector)


@dataclass(frozen=True)
class RunResult:
    best_x: float
    best_f: float
    trials: tuple = field(repr=False)
    n_trials: int
    status: RunStatus
    method_label: str
    reason: str = ""

    @property
    def converged(self) -> bool:
        return self.status is RunStatus.CONVERGED


_ESTIMATOR_CODES = {
    Estimator.KNOWN_CONSTANT: "KC",
    Estimator.GLOBAL_ESTIMATE: "GE",
    Estimator.LOCAL_TUNING: "LT",
}

METHOD_LABELS = (
    "PKC", "GE", "LT", "PKC_LI", "GE_LI", "LT_LI",
    "DKC", "DGE", "DLT", "DKC_LI", "DGE_LI", "DLT_LI",
)


def method_label(scheme: Scheme, estimator: Estimator, selector: Selector) -> str:
    code = _ESTIMATOR_CODES[estimator]
    if scheme is Scheme.GS_D:
        code = "D" + code
    elif estimator is Estimator.KNOWN_CONSTANT:
        code = "P" + code
    if selector is Selector.LOCAL_IMPROVEMENT:
        code += "_LI"
    return code


def parse_label(label: str) -> tuple[Scheme, Estimator, Selector]:
    """Inverse of :func:`method_label`, e.g. ``"DLT_LI"``."""
    text = label.strip().upper()
    if text not in METHOD_LABELS:
        raise ConfigurationError(
            f"unknown method {label!r}; expected one of {', '.join(METHOD_LABELS)}"
        )
    selector = Selector.MIN_CHARACTERISTIC
    if text.endswith("_LI"):
        selector = Selector.LOCAL_IMPROVEMENT
        text = text[:-3]
    scheme = Scheme.GS
    if text.startswith("D"):
        scheme = Scheme.GS_D
        text = text[1:]
    elif text.startswith("P"):
        text = text[1:]
    estimator = {code: est for est, code in _ESTIMATOR_CODES.items()}[text]
    return scheme, estimator, selector


def validate_problem(problem: Problem, config: MethodConfig) -> Optional[str]:
    """Return ``None`` if ``config`` can run on ``problem``, else the reason it cannot."""
    if config.scheme is Scheme.GS_D and problem.df is None:
        return "derivative required"
    if config.estimator is Estimator.KNOWN_CONSTANT:
        known = problem.known_L if config.scheme is Scheme.GS else problem.known_M
        if known is None:
            return "known constant required"
    return None
