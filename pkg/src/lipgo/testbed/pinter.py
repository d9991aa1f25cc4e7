"""Randomized test class with known global minimizer (value 0) on [-5, 5]."""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from ..core import ConfigurationError, Problem
from .rng import SplitMix64

LOWER, UPPER = -5.0, 5.0
FUNCTION_38_MINIMIZER = 3.3611804993


def pinter_f(x, x_star: float):
    t = np.subtract(x, x_star)
    return 0.025 * t**2 + np.sin(t + t**2) ** 2 + np.sin(t) ** 2


def pinter_df(x, x_star: float):
    t = np.subtract(x, x_star)
    u = t + t**2
    # d/dx sin(u)^2 = sin(2u) u'
    return 0.05 * t + np.sin(2.0 * u) * (1.0 + 2.0 * t) + np.sin(2.0 * t)


@dataclass(frozen=True)
class PinterInstance:
    index: int
    x_star: float
    problem: Problem


def pinter_problem(x_star: float, name: str | None = None) -> Problem:
    if not LOWER <= x_star <= UPPER:
        raise ConfigurationError(f"x_star must lie in [{LOWER}, {UPPER}], got {x_star}")
    x_star = float(x_star)
    return Problem(
        name=name or f"pinter({x_star!r})",
        a=LOWER,
        b=UPPER,
        f=partial(pinter_f, x_star=x_star),
        df=partial(pinter_df, x_star=x_star),
        known_min_x=x_star,
        known_min_f=0.0,
    )


def pinter_minimizers(seed: int, count: int) -> list[float]:
    """``count`` minimizers drawn uniformly from the closed interval [-5, 5]."""
    if count < 1:
        raise ConfigurationError("count must be at least 1")
    rng = SplitMix64(seed)
    return [LOWER + (UPPER - LOWER) * rng.next_closed_unit() for _ in range(count)]


def pinter_suite(seed: int, count: int = 100) -> list[PinterInstance]:
    return [
        PinterInstance(j, x_star, pinter_problem(x_star, name=f"pinter{j:03d}"))
        for j, x_star in enumerate(pinter_minimizers(seed, count), start=1)
    ]
