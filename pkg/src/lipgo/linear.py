"""Piece-wise linear minorants for Lipschitz objectives.

Interval arrays are 0-based: interval ``j`` is ``[xs[j], xs[j+1]]``.
All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import numpy as np

from .core import Estimator, EstimateViolated, MethodConfig


def rate_H(x0, x1, z0, z1):
    """Absolute divided difference ``|z1 - z0| / (x1 - x0)``."""
    width = np.subtract(x1, x0)
    if np.any(width <= 0):
        raise ValueError("interval with non-positive width")
    return np.abs(np.subtract(z1, z0)) / width


def estimate_global(rates, r: float, xi: float) -> float:
    """One estimate for every interval: ``r * max(xi, max(rates))``."""
    return r * max(xi, float(np.max(rates)))


def estimate_local_tuning(rates, widths, r: float, xi: float) -> np.ndarray:
    """Per-interval estimates balancing neighbouring rates against a width-scaled global rate.

    The local part is the largest rate among the interval and its immediate
    neighbours (only the existing ones at either end); the global part is the
    largest rate over all intervals scaled by ``width / max(width)``.
    """
    rates = np.asarray(rates, dtype=float)
    widths = np.asarray(widths, dtype=float)
    local = rates.copy()
    if rates.size > 1:
        local[1:] = np.maximum(local[1:], rates[:-1])
        local[:-1] = np.maximum(local[:-1], rates[1:])
    global_part = rates.max() * widths / widths.max()
    return r * np.maximum(np.maximum(local, global_part), xi)


def estimates(rates, widths, config: MethodConfig, known: float | None) -> np.ndarray:
    """Dispatch on ``config.estimator``; shared by both schemes."""
    if config.estimator is Estimator.KNOWN_CONSTANT:
        return np.full(len(rates), float(known))
    if config.estimator is Estimator.GLOBAL_ESTIMATE:
        return np.full(len(rates), estimate_global(rates, config.r, config.xi))
    return estimate_local_tuning(rates, widths, config.r, config.xi)


def characteristic(x0, x1, z0, z1, l):
    """Minimum of the tent ``max(z0 - l(x - x0), z1 + l(x - x1))`` over the interval."""
    return 0.5 * (np.add(z0, z1) - np.multiply(l, np.subtract(x1, x0)))


def place_trial(x0: float, x1: float, z0: float, z1: float, l: float) -> float:
    """Abscissa where the tent attains its minimum.

    Raises :class:`EstimateViolated` unless the point is strictly inside
    ``(x0, x1)``, which requires ``l`` to exceed the interval's slope.
    """
    x = 0.5 * (x0 + x1) + (z0 - z1) / (2.0 * l)
    if not x0 < x < x1:
        raise EstimateViolated(
            f"estimate violated: l={l!r} places trial {x!r} outside ({x0!r}, {x1!r})"
        )
    return x


def tent(x, x0, x1, z0, z1, l):
    return np.maximum(z0 - l * (x - x0), z1 + l * (x - x1))


def eval_lower_bound(xs, zs, ls, x):
    """Evaluate the piece-wise linear auxiliary function at ``x``.

    ``ls`` holds one estimate per interval.  A point shared by two intervals
    belongs to the left one; the value there is the trial value anyway.
    """
    xs = np.asarray(xs, dtype=float)
    zs = np.asarray(zs, dtype=float)
    ls = np.asarray(ls, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any((x < xs[0]) | (x > xs[-1])):
        raise ValueError("x outside the search interval")
    j = np.clip(np.searchsorted(xs, x, side="left") - 1, 0, len(xs) - 2)
    return tent(x, xs[j], xs[j + 1], zs[j], zs[j + 1], ls[j])


class LinearScheme:
    """Per-iteration hooks of the piece-wise linear scheme for the engine."""

    uses_derivative = False

    def __init__(self, config: MethodConfig, known_L: float | None = None):
        self.config = config
        self.known = known_L

    def refresh(self, table) -> None:
        xs, zs = table.xs, table.zs
        widths = np.diff(xs)
        table.rates = np.abs(np.diff(zs)) / widths
        table.estimates = estimates(table.rates, widths, self.config, self.known)
        table.R = characteristic(xs[:-1], xs[1:], zs[:-1], zs[1:], table.estimates)

    def place(self, table, t: int) -> float:
        return place_trial(
            table.xs[t], table.xs[t + 1], table.zs[t], table.zs[t + 1], table.estimates[t]
        )
