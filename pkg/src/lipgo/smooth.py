"""Smooth piece-wise quadratic minorants for objectives with a Lipschitz derivative.

On an interval ``[x0, x1]`` with values ``z0, z1``, slopes ``d0, d1`` and
curvature bound ``m`` the support function is made of three pieces: the
concave parabola ``phi_left`` through the left trial, a convex parabola
``pi`` of curvature ``m`` on ``[y', y]``, and ``phi_right`` through the
right trial, pasted with matching values and slopes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import EstimateViolated, MethodConfig, RunError
from .linear import estimates

DENOMINATOR_GUARD = 1e-12


class Case(enum.IntEnum):
    """Where the support function attains its minimum; decides the next trial."""

    I = 0  # interior vertex of pi, trial at x_bar
    Y_PRIME = 1  # left end wins, trial at y'
    Y = 2  # right end wins, trial at y
    DEGENERATE = 3  # geometry undefined, trial at the midpoint


def rate_v(x0, x1, z0, z1, d0, d1):
    """Curvature rate of an interval from values and slopes at its ends.

    Returns ``(v, d)``.  For a quadratic with second derivative ``c`` the
    rate is exactly ``c``.
    """
    args = [np.asarray(a, dtype=float) for a in (x0, x1, z0, z1, d0, d1)]
    if not all(np.all(np.isfinite(a)) for a in args):
        raise RunError("non-finite interval data in rate_v")
    x0, x1, z0, z1, d0, d1 = args
    width = x1 - x0
    if np.any(width <= 0):
        raise ValueError("interval with non-positive width")
    bracket = np.abs(2.0 * (z0 - z1) + (d0 + d1) * width)
    d = np.hypot(bracket, (d1 - d0) * width)
    return (bracket + d) / width**2, d


@dataclass(frozen=True)
class SupportGeometry:
    """Contact points ``y_prime <= y`` and vertex ``x_bar`` of the middle parabola."""

    y_prime: np.ndarray
    y: np.ndarray
    x_bar: np.ndarray
    degenerate: np.ndarray


def support_geometry(x0, x1, z0, z1, d0, d1, m) -> SupportGeometry:
    x0, x1, z0, z1, d0, d1, m = np.broadcast_arrays(
        *[np.asarray(a, dtype=float) for a in (x0, x1, z0, z1, d0, d1, m)]
    )
    width = x1 - x0
    den = m * width + d1 - d0
    degenerate = den <= DENOMINATOR_GUARD * np.maximum(1.0, m * width)
    safe_den = np.where(degenerate, 1.0, den)
    # coordinates shifted to x0; algebraically identical to the absolute form
    centre = x0 + (z0 - z1 + d1 * width + 0.5 * m * width**2) / safe_den
    half_gap = 0.25 * width + 0.25 * (d1 - d0) / m
    y = centre + half_gap
    y_prime = centre - half_gap
    x_bar = 2.0 * y - d1 / m - x1
    mid = 0.5 * (x0 + x1)
    return SupportGeometry(
        y_prime=np.where(degenerate, mid, y_prime),
        y=np.where(degenerate, mid, y),
        x_bar=np.where(degenerate, mid, x_bar),
        degenerate=degenerate,
    )


def _phi_left(x, x0, z0, d0, m):
    s = x - x0
    return z0 + d0 * s - 0.5 * m * s**2, d0 - m * s


def _phi_right(x, x1, z1, d1, m):
    s = x1 - x
    return z1 - d1 * s - 0.5 * m * s**2, d1 + m * s


def _pi(x, x1, z1, d1, m, y):
    # anchored by C1 contact with phi_right at y
    value_y, slope_y = _phi_right(y, x1, z1, d1, m)
    s = x - y
    return value_y + slope_y * s + 0.5 * m * s**2, slope_y + m * s


def parabola_slope(x, geometry: SupportGeometry, m):
    """Derivative of the middle parabola, ``m * (x - x_bar)``."""
    return m * (np.asarray(x, dtype=float) - geometry.x_bar)


def classify_and_characterize(x0, x1, z0, z1, d0, d1, m, geometry: SupportGeometry):
    """Return ``(R, case)`` arrays for one or more intervals."""
    x1, z0, z1, d1, m = np.broadcast_arrays(
        *[np.asarray(a, dtype=float) for a in (x1, z0, z1, d1, m)]
    )
    sign_test = parabola_slope(geometry.y_prime, geometry, m) * parabola_slope(
        geometry.y, geometry, m
    )
    interior = sign_test < 0
    vertex_value, _ = _pi(geometry.x_bar, x1, z1, d1, m, geometry.y)
    endpoint_min = np.minimum(z0, z1)
    R = np.where(interior, np.minimum(endpoint_min, vertex_value), endpoint_min)
    case = np.where(interior, Case.I, np.where(z0 < z1, Case.Y_PRIME, Case.Y))
    case = np.where(geometry.degenerate, Case.DEGENERATE, case)
    R = np.where(geometry.degenerate, endpoint_min, R)
    return R, case.astype(int)


def place_trial_smooth(case, geometry: SupportGeometry, x0: float, x1: float, j: int = 0) -> float:
    """Next trial for interval ``j`` of ``geometry``; must land strictly inside ``(x0, x1)``."""
    case = Case(int(np.ravel(case)[j] if np.ndim(case) else case))
    pick = {
        Case.I: geometry.x_bar,
        Case.Y_PRIME: geometry.y_prime,
        Case.Y: geometry.y,
        Case.DEGENERATE: geometry.x_bar,
    }[case]
    x = float(np.ravel(pick)[j])
    if not x0 < x < x1:
        raise EstimateViolated(
            f"estimate violated: case {case.name} places trial {x!r} outside ({x0!r}, {x1!r})"
        )
    return x


def eval_support(x0, x1, z0, z1, d0, d1, m, x, geometry: SupportGeometry | None = None):
    """Value and slope of the smooth support function at ``x`` in ``[x0, x1]``."""
    x = np.asarray(x, dtype=float)
    if np.any((x < x0) | (x > x1)):
        raise ValueError(f"x outside interval [{x0}, {x1}]")
    if geometry is None:
        geometry = support_geometry(x0, x1, z0, z1, d0, d1, m)
    left = _phi_left(x, x0, z0, d0, m)
    right = _phi_right(x, x1, z1, d1, m)
    middle = _pi(x, x1, z1, d1, m, geometry.y)
    in_left = x <= geometry.y_prime
    in_right = x >= geometry.y
    value = np.where(in_left, left[0], np.where(in_right, right[0], middle[0]))
    slope = np.where(in_left, left[1], np.where(in_right, right[1], middle[1]))
    return value, slope


def eval_nonsmooth_bound(x0, x1, z0, z1, d0, d1, m, x):
    """Maximum of the two concave parabolas through the interval ends."""
    x = np.asarray(x, dtype=float)
    if np.any((x < x0) | (x > x1)):
        raise ValueError(f"x outside interval [{x0}, {x1}]")
    return np.maximum(_phi_left(x, x0, z0, d0, m)[0], _phi_right(x, x1, z1, d1, m)[0])


def margin_bound(r: float) -> float:
    """Guaranteed relative distance of y' and y from the interval ends when m >= r*v."""
    return (r - 1.0) ** 2 / (4.0 * r * (r + 1.0))


class SmoothScheme:
    """Per-iteration hooks of the derivative scheme for the engine."""

    uses_derivative = True

    def __init__(self, config: MethodConfig, known_M: float | None = None):
        self.config = config
        self.known = known_M

    def refresh(self, table) -> None:
        xs, zs, dzs = table.xs, table.zs, table.dzs
        x0, x1, z0, z1, d0, d1 = xs[:-1], xs[1:], zs[:-1], zs[1:], dzs[:-1], dzs[1:]
        table.rates, _ = rate_v(x0, x1, z0, z1, d0, d1)
        table.estimates = estimates(table.rates, x1 - x0, self.config, self.known)
        table.geometry = support_geometry(x0, x1, z0, z1, d0, d1, table.estimates)
        table.R, table.cases = classify_and_characterize(
            x0, x1, z0, z1, d0, d1, table.estimates, table.geometry
        )

    def place(self, table, t: int) -> float:
        return place_trial_smooth(table.cases, table.geometry, table.xs[t], table.xs[t + 1], t)
