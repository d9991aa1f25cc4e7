"""Brute-force grid ground truth and sampled Lipschitz constants."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .core import LipgoError, Problem

DEFAULT_GRID = 10**6 + 1
SAFETY_FACTOR = 1.01


class OracleError(LipgoError):
    pass


@dataclass(frozen=True)
class OracleReport:
    grid_n: int
    x_min: float
    f_min: float
    L_hat: float
    M_hat: Optional[float] = None


def _sample(func, xs: np.ndarray, what: str) -> np.ndarray:
    try:
        with np.errstate(all="ignore"):
            values = np.asarray(func(xs), dtype=float)
        if values.shape != xs.shape:
            values = np.broadcast_to(values, xs.shape).copy()
    except Exception:
        # evaluators written for scalars only
        values = np.array([float(func(float(x))) for x in xs])
    bad = ~np.isfinite(values)
    if bad.any():
        raise OracleError(f"{what} is not finite at x={xs[np.argmax(bad)]!r}")
    return values


def grid(problem: Problem, n: int) -> np.ndarray:
    if n < 2:
        raise OracleError("grid needs at least 2 points")
    return np.linspace(problem.a, problem.b, n)


def grid_min(problem: Problem, n: int = DEFAULT_GRID) -> tuple[float, float]:
    """Smallest value of ``f`` on ``n`` equispaced points (leftmost on ties)."""
    xs = grid(problem, n)
    values = _sample(problem.f, xs, "f")
    i = int(np.argmin(values))
    return float(xs[i]), float(values[i])


def estimate_constants(
    problem: Problem, n: int = DEFAULT_GRID, safety: float = SAFETY_FACTOR
) -> tuple[float, Optional[float]]:
    """Largest adjacent divided differences of ``f`` and ``f'``, inflated by ``safety``."""
    xs = grid(problem, n)
    steps = np.diff(xs)
    L_hat = safety * float(np.max(np.abs(np.diff(_sample(problem.f, xs, "f"))) / steps))
    M_hat = None
    if problem.df is not None:
        slopes = _sample(problem.df, xs, "f'")
        M_hat = safety * float(np.max(np.abs(np.diff(slopes)) / steps))
    return L_hat, M_hat


def report(problem: Problem, n: int = DEFAULT_GRID) -> OracleReport:
    x_min, f_min = grid_min(problem, n)
    L_hat, M_hat = estimate_constants(problem, n)
    return OracleReport(n, x_min, f_min, L_hat, M_hat)


def with_oracle_constants(problem: Problem, n: int = DEFAULT_GRID) -> Problem:
    """Copy of ``problem`` with missing known constants filled in from the oracle."""
    if problem.known_L is not None and (problem.known_M is not None or problem.df is None):
        return problem
    L_hat, M_hat = estimate_constants(problem, n)
    return replace(
        problem,
        known_L=problem.known_L if problem.known_L is not None else L_hat,
        known_M=problem.known_M if problem.known_M is not None else M_hat,
    )
