"""The twelve named methods as runnable objects."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import (
    ConfigurationError,
    MethodConfig,
    Problem,
    RunResult,
    RunStatus,
    Scheme,
    parse_label,
    validate_problem,
)
from .engine import Observer, run_scheme
from .linear import LinearScheme
from .smooth import SmoothScheme


@dataclass(frozen=True)
class Method:
    config: MethodConfig

    @property
    def label(self) -> str:
        return self.config.label

    def solve(self, problem: Problem, observer: Observer | None = None) -> RunResult:
        """Minimize ``problem``; a problem this method cannot use yields status Rejected."""
        reason = validate_problem(problem, self.config)
        if reason is not None:
            return RunResult(
                best_x=float("nan"),
                best_f=float("nan"),
                trials=(),
                n_trials=0,
                status=RunStatus.REJECTED,
                method_label=self.label,
                reason=reason,
            )
        if self.config.scheme is Scheme.GS:
            scheme = LinearScheme(self.config, problem.known_L)
        else:
            scheme = SmoothScheme(self.config, problem.known_M)
        return run_scheme(problem, self.config, scheme, observer)


def make_method(config: MethodConfig) -> Method:
    if not isinstance(config, MethodConfig):
        raise ConfigurationError("make_method expects a MethodConfig")
    return Method(config)


def method_from_label(label: str, **params) -> Method:
    """Build a method from its acronym, e.g. ``method_from_label("LT_LI", r=1.2)``."""
    scheme, estimator, selector = parse_label(label)
    config = MethodConfig(scheme=scheme, estimator=estimator, selector=selector, **params)
    return Method(config)


def with_params(method: Method, **params) -> Method:
    return Method(replace(method.config, **params))
