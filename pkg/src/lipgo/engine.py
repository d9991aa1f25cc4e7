"""Outer loop shared by both schemes and the two interval-selection rules."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .core import (
    DegeneratePlacement,
    EstimateViolated,
    EvaluatorError,
    MethodConfig,
    Problem,
    RunResult,
    RunStatus,
    Selector,
    Trial,
)

# relative distance below which two abscissas count as the same point
COINCIDENCE_TOL = 4 * np.finfo(float).eps


class Side(enum.Enum):
    RIGHT = "Right"
    LEFT = "Left"

    def flipped(self) -> "Side":
        return Side.LEFT if self is Side.RIGHT else Side.RIGHT


@dataclass
class IntervalTable:
    """Sorted trials plus per-interval scratch data filled by a scheme.

    Interval ``j`` is ``[xs[j], xs[j+1]]``; the scratch arrays have
    ``len(xs) - 1`` entries and are reset to ``None`` by every insertion.
    """

    xs: np.ndarray
    zs: np.ndarray
    dzs: Optional[np.ndarray] = None
    rates: Optional[np.ndarray] = None
    estimates: Optional[np.ndarray] = None
    R: Optional[np.ndarray] = None
    geometry: object = None
    cases: Optional[np.ndarray] = None

    @property
    def k(self) -> int:
        return len(self.xs)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.xs)

    def invalidate(self) -> None:
        self.rates = self.estimates = self.R = self.geometry = self.cases = None


@dataclass(frozen=True)
class SelectorState:
    flag: int = 0
    imin: int = 0
    side: Side = Side.RIGHT
    last_trial_index: int = 1


def locate(table: IntervalTable, x: float) -> int:
    """Insertion position of ``x``; raises if ``x`` coincides with a trial."""
    xs = table.xs
    pos = int(np.searchsorted(xs, x))
    for j in (pos - 1, pos):
        if 0 <= j < len(xs) and abs(xs[j] - x) <= COINCIDENCE_TOL * max(1.0, abs(x)):
            raise DegeneratePlacement(f"degenerate placement: x={x!r} repeats trial {xs[j]!r}")
    if pos == 0 or pos == len(xs):
        raise DegeneratePlacement(f"degenerate placement: x={x!r} outside [{xs[0]}, {xs[-1]}]")
    return pos


def insert_trial(table: IntervalTable, x: float, z: float, dz: Optional[float] = None) -> int:
    """Insert a trial keeping ``xs`` sorted; returns its position."""
    pos = locate(table, x)
    table.xs = np.insert(table.xs, pos, x)
    table.zs = np.insert(table.zs, pos, z)
    if table.dzs is not None:
        table.dzs = np.insert(table.dzs, pos, dz)
    table.invalidate()
    return pos


def select_min_characteristic(table: IntervalTable) -> int:
    """Interval with the smallest characteristic; lowest index on ties."""
    return int(np.argmin(table.R))


def select_local_improvement(
    table: IntervalTable, state: SelectorState, delta: float, fallback: bool = False
) -> tuple[int, SelectorState]:
    """Alternate global steps with steps next to the incumbent best trial.

    On a local step the interval on ``state.side`` of the incumbent is taken
    if it is wider than ``delta``, otherwise the other neighbour.  When both
    are too narrow the neighbour on ``state.side`` is returned anyway, so the
    stopping rule ends the run once ``delta <= eps``; with ``fallback`` the
    minimal-characteristic rule decides instead.
    """
    if state.flag == 0:
        return select_min_characteristic(table), replace(state, flag=1)

    imin = state.imin
    j = state.last_trial_index
    if table.zs[j] < table.zs[imin]:
        imin = j

    k = table.k
    widths = table.widths

    def neighbour(side: Side) -> int:
        if imin == 0:
            return 0
        if imin == k - 1:
            return k - 2
        return imin if side is Side.RIGHT else imin - 1

    t = None
    side = state.side
    for candidate in (side, side.flipped()):
        j = neighbour(candidate)
        if widths[j] > delta:
            t = j
            side = candidate.flipped()
            break
    if t is None:
        # both neighbours are narrower than delta: the local phase is exhausted
        t = select_min_characteristic(table) if fallback else neighbour(side)
    return t, replace(state, flag=0, imin=imin, side=side)


def stop_check(width: float, eps: float) -> bool:
    """True when the selected interval is no wider than the accuracy."""
    return width <= eps


Observer = Callable[[IntervalTable, int], None]


def _evaluate(problem: Problem, x: float, with_derivative: bool) -> Trial:
    x = float(x)
    try:
        z = float(problem.f(x))
    except Exception as exc:  # evaluator failures become run errors
        raise EvaluatorError(f"objective failed ({exc})", x) from exc
    if not math.isfinite(z):
        raise EvaluatorError(f"objective returned {z}", x)
    dz = None
    if with_derivative:
        try:
            dz = float(problem.df(x))
        except Exception as exc:
            raise EvaluatorError(f"derivative failed ({exc})", x) from exc
        if not math.isfinite(dz):
            raise EvaluatorError(f"derivative returned {dz}", x)
    return Trial(x, z, dz)


def run_scheme(
    problem: Problem,
    config: MethodConfig,
    scheme,
    observer: Optional[Observer] = None,
) -> RunResult:
    """Run one method to completion.

    ``scheme`` supplies ``refresh(table)`` (estimates and characteristics)
    and ``place(table, t)`` (next abscissa in interval ``t``).  ``observer``
    is called after every refresh with the table and the selected interval.
    """
    a, b = float(problem.a), float(problem.b)
    eps = config.effective_eps(a, b)
    delta = config.effective_delta(a, b)
    use_dz = scheme.uses_derivative

    trials = [_evaluate(problem, a, use_dz), _evaluate(problem, b, use_dz)]
    table = IntervalTable(
        xs=np.array([a, b]),
        zs=np.array([trials[0].z, trials[1].z]),
        dzs=np.array([trials[0].dz, trials[1].dz]) if use_dz else None,
    )
    state = SelectorState(imin=1 if trials[1].z < trials[0].z else 0)
    local = config.selector is Selector.LOCAL_IMPROVEMENT

    while True:
        scheme.refresh(table)
        if local:
            t, state = select_local_improvement(table, state, delta, config.local_fallback)
        else:
            t = select_min_characteristic(table)
        if observer is not None:
            observer(table, t)
        if stop_check(table.xs[t + 1] - table.xs[t], eps):
            status = RunStatus.CONVERGED
            break
        if len(trials) >= config.max_trials:
            status = RunStatus.TRIAL_CAP_REACHED
            break
        x = scheme.place(table, t)
        if not table.xs[t] < x < table.xs[t + 1]:
            raise EstimateViolated(f"estimate violated: trial {x!r} outside interval {t}")
        locate(table, x)  # reject coincidences before spending an evaluation
        trial = _evaluate(problem, x, use_dz)
        trials.append(trial)
        pos = insert_trial(table, trial.x, trial.z, trial.dz)
        imin = state.imin + 1 if pos <= state.imin else state.imin
        if trial.z < table.zs[imin]:
            imin = pos
        state = replace(state, imin=imin, last_trial_index=pos)

    best = min(range(len(trials)), key=lambda i: (trials[i].z, i))
    return RunResult(
        best_x=trials[best].x,
        best_f=trials[best].z,
        trials=tuple(trials),
        n_trials=len(trials),
        status=status,
        method_label=config.label,
    )
