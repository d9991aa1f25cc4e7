"""Method-by-problem benchmark matrices and their CSV / Markdown rendering."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .core import Estimator, LipgoError, Problem, RunStatus, parse_label
from .methods import method_from_label
from .oracle import DEFAULT_GRID, estimate_constants

CSV_COLUMNS = ("problem", "method", "r", "eps", "trials", "best_x", "best_f", "status", "success")
ERROR_STATUS = "Error"


@dataclass(frozen=True)
class BenchRow:
    problem: str
    method: str
    r: Optional[float]
    eps: float
    trials: int
    best_x: float
    best_f: float
    status: str
    success: bool


@dataclass
class BenchReport:
    problems: list[str]
    methods: list[str]
    rows: list[BenchRow] = field(default_factory=list)

    def rows_for(self, method: str) -> list[BenchRow]:
        return [row for row in self.rows if row.method == method]

    def average(self, method: str) -> float:
        """Mean trial count over the successful rows of ``method`` (nan if none)."""
        trials = [row.trials for row in self.rows_for(method) if row.success]
        return float(np.mean(trials)) if trials else float("nan")

    def averages(self) -> dict[str, float]:
        return {m: self.average(m) for m in self.methods}

    def r_values(self, method: str) -> list[float]:
        return sorted({row.r for row in self.rows_for(method) if row.r is not None})

    def failures(self, method: str | None = None) -> list[BenchRow]:
        return [row for row in self.rows if not row.success and method in (None, row.method)]

    @property
    def all_success(self) -> bool:
        return all(row.success for row in self.rows)


def is_success(problem: Problem, best_x: float, status: str, eps_eff: float) -> bool:
    if status != RunStatus.CONVERGED.value:
        return False
    if problem.known_min_x is None:
        return True
    return abs(best_x - problem.known_min_x) <= eps_eff


def run_cell(
    problem: Problem,
    label: str,
    r: float,
    eps: float,
    eps_relative: bool = True,
    delta: float | None = None,
    xi: float = 1e-8,
    max_trials: int = 10**6,
) -> BenchRow:
    """One (problem, method) run; run errors become an ``Error`` row."""
    _, estimator, _ = parse_label(label)
    adaptive = estimator is not Estimator.KNOWN_CONSTANT
    method = method_from_label(
        label,
        r=r if adaptive else 1.1,
        eps=eps,
        eps_relative=eps_relative,
        delta=delta,
        xi=xi,
        max_trials=max_trials,
    )
    eps_eff = method.config.effective_eps(problem.a, problem.b)
    try:
        result = method.solve(problem)
    except LipgoError:
        return BenchRow(problem.name, label, r if adaptive else None, eps_eff, 0,
                        float("nan"), float("nan"), ERROR_STATUS, False)
    status = result.status.value
    return BenchRow(
        problem=problem.name,
        method=label,
        r=r if adaptive else None,
        eps=eps_eff,
        trials=int(result.n_trials),
        best_x=float(result.best_x),
        best_f=float(result.best_f),
        status=status,
        success=bool(is_success(problem, result.best_x, status, eps_eff)),
    )


def _run_cell_job(job):
    problem, label, r, kwargs = job
    return run_cell(problem, label, r, **kwargs)


def _map(jobs, parallel: int):
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            return list(pool.map(_run_cell_job, jobs, chunksize=max(1, len(jobs) // (4 * parallel))))
    return [_run_cell_job(job) for job in jobs]


def fill_known_constants(problems: Sequence[Problem], oracle_n: int = DEFAULT_GRID) -> list[Problem]:
    """Fill missing known L / M from the sampling oracle, problem by problem."""
    filled = []
    for p in problems:
        need_L = p.known_L is None
        need_M = p.known_M is None and p.df is not None
        if need_L or need_M:
            L_hat, M_hat = estimate_constants(p, oracle_n)
            p = replace(p, known_L=L_hat if need_L else p.known_L, known_M=M_hat if need_M else p.known_M)
        filled.append(p)
    return filled


def run_bench(
    problems: Sequence[Problem],
    methods: Sequence[str],
    eps: float = 1e-4,
    eps_relative: bool = True,
    r: float = 1.1,
    r_auto: bool = False,
    r_step: float = 0.1,
    r_max: float = 3.0,
    delta: float | None = None,
    xi: float = 1e-8,
    max_trials: int = 10**6,
    parallel: int = 1,
    oracle_n: int = DEFAULT_GRID,
) -> BenchReport:
    """Run every method on every problem.

    With ``r_auto`` each adaptive method starts at ``r`` and the rows that
    fail are rerun with ``r + r_step``, ``r + 2 r_step`` ... up to ``r_max``;
    each row keeps the ``r`` it was finally run with.
    """
    methods = [m.strip().upper() for m in methods]
    for label in methods:
        parse_label(label)
    if any(parse_label(m)[1] is Estimator.KNOWN_CONSTANT for m in methods):
        problems = fill_known_constants(problems, oracle_n)
    problems = list(problems)
    kwargs = dict(eps=eps, eps_relative=eps_relative, delta=delta, xi=xi, max_trials=max_trials)

    cells = {(i, m): None for m in methods for i in range(len(problems))}
    pending = [(i, m, r) for m in methods for i in range(len(problems))]
    while pending:
        jobs = [(problems[i], m, r_cell, kwargs) for i, m, r_cell in pending]
        results = _map(jobs, parallel)
        retry = []
        for (i, m, r_cell), row in zip(pending, results):
            cells[i, m] = row
            adaptive = parse_label(m)[1] is not Estimator.KNOWN_CONSTANT
            next_r = round(r_cell + r_step, 10)
            if r_auto and adaptive and not row.success and next_r <= r_max + 1e-12:
                retry.append((i, m, next_r))
        pending = retry

    rows = [cells[i, m] for i in range(len(problems)) for m in methods]
    return BenchReport(problems=[p.name for p in problems], methods=methods, rows=rows)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(report: BenchReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        writer.writerow([_fmt(getattr(row, col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def parse_csv(text: str) -> list[BenchRow]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(
            BenchRow(
                problem=rec["problem"],
                method=rec["method"],
                r=float(rec["r"]) if rec["r"] else None,
                eps=float(rec["eps"]),
                trials=int(rec["trials"]),
                best_x=float(rec["best_x"]),
                best_f=float(rec["best_f"]),
                status=rec["status"],
                success=rec["success"] == "true",
            )
        )
    return rows


def _method_heading(report: BenchReport, method: str) -> str:
    rs = report.r_values(method)
    if not rs:
        return method
    if len(rs) == 1:
        return f"{method} (r={rs[0]:g})"
    return f"{method} (r={rs[0]:g}-{rs[-1]:g}*)"


def render_markdown(report: BenchReport) -> str:
    """Problems as rows, methods as columns, trial counts in cells, then an Average row.

    Unsuccessful cells carry a trailing ``!``; they are left out of the average.
    """
    lookup = {(row.problem, row.method): row for row in report.rows}
    lines = [
        "| Problem | " + " | ".join(_method_heading(report, m) for m in report.methods) + " |",
        "|---|" + "---:|" * len(report.methods),
    ]
    for name in report.problems:
        cells = []
        for m in report.methods:
            row = lookup[name, m]
            cells.append(str(row.trials) + ("" if row.success else "!"))
        lines.append(f"| {name} | " + " | ".join(cells) + " |")
    avg = [f"{report.average(m):.2f}" for m in report.methods]
    lines.append("| Average | " + " | ".join(avg) + " |")
    return "\n".join(lines) + "\n"


def render_report(report: BenchReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        return render_csv(report)
    if fmt == "md":
        return render_markdown(report)
    raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'md'")
