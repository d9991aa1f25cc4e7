"""Acceptance criteria, one test per criterion, each logging a single pass/fail line.

The randomized suite uses seed 2024 and 100 instances throughout.  Known
constants for PKC/DKC come from the sampling oracle.
"""

import time

import numpy as np
import pytest

from lipgo import METHOD_LABELS, method_from_label
from lipgo.bench import fill_known_constants, render_csv, render_markdown, run_bench
from lipgo.linear import tent
from lipgo.oracle import estimate_constants
from lipgo.smooth import (
    _phi_left,
    _phi_right,
    _pi,
    eval_nonsmooth_bound,
    eval_support,
    margin_bound,
    rate_v,
    support_geometry,
)
from lipgo.testbed.expr import compile_expression, differentiate, parse_expression
from lipgo.testbed.fixtures import shipped_fixtures
from lipgo.testbed.pinter import pinter_suite

pytestmark = pytest.mark.slow

SEED = 2024
GS_METHODS = ["PKC", "GE", "LT", "PKC_LI", "GE_LI", "LT_LI"]
GSD_METHODS = ["DKC", "DGE", "DLT", "DKC_LI", "DGE_LI", "DLT_LI"]
PUBLISHED_GS = dict(zip(GS_METHODS, [400.54, 167.63, 47.28, 44.82, 40.22, 38.88]))
PUBLISHED_GSD = dict(zip(GSD_METHODS, [125.85, 87.53, 49.00, 43.72, 38.46, 28.50]))


def within_half(measured, published):
    return abs(measured - published) <= 0.5 * published


def fmt_averages(report):
    return ", ".join(f"{m}={report.average(m):.2f}" for m in report.methods)


@pytest.fixture(scope="module")
def suite():
    return fill_known_constants([inst.problem for inst in pinter_suite(SEED, 100)])


@pytest.fixture(scope="module")
def gs_reports(suite):
    # published GS averages used r tuned per problem, starting from 1.1
    return {eps: run_bench(suite, GS_METHODS, eps=eps, r=1.1, r_auto=True) for eps in (1e-4, 1e-6)}


@pytest.fixture(scope="module")
def gsd_reports(suite):
    return {eps: run_bench(suite, GSD_METHODS, eps=eps, r=1.1) for eps in (1e-4, 1e-6)}


def test_criterion_01_suite_success(acceptance_log):
    problems = [inst.problem for inst in pinter_suite(SEED, 100)]
    start = time.perf_counter()
    report = run_bench(problems, ["LT", "LT_LI", "DLT", "DLT_LI"], eps=1e-4, r=1.1, r_auto=True)
    elapsed = time.perf_counter() - start
    r_max = max(max(report.r_values(m)) for m in report.methods)
    ok = report.all_success and elapsed < 60.0
    acceptance_log(
        1, ok, f"{len(report.rows) - len(report.failures())}/{len(report.rows)} solved, "
        f"r up to {r_max:g}, {elapsed:.1f}s"
    )
    assert ok


def test_criterion_02_gs_magnitudes(gs_reports, acceptance_log):
    report = gs_reports[1e-4]
    avg = report.averages()
    magnitude = all(within_half(avg[m], PUBLISHED_GS[m]) for m in GS_METHODS)
    ordering = avg["PKC"] > avg["GE"] > avg["LT"]
    li = all(avg[f"{m}_LI"] <= avg[m] for m in ("PKC", "GE", "LT"))
    ok = magnitude and ordering and li
    acceptance_log(2, ok, f"{fmt_averages(report)}; magnitude={magnitude} order={ordering} li={li}")
    assert ok


def test_criterion_03_gsd_magnitudes(gs_reports, gsd_reports, acceptance_log):
    report = gsd_reports[1e-4]
    avg = report.averages()
    gs_avg = gs_reports[1e-4].averages()
    magnitude = all(within_half(avg[m], PUBLISHED_GSD[m]) for m in GSD_METHODS)
    ordering = avg["DKC"] > avg["DGE"] > avg["DLT"] and min(avg, key=avg.get) == "DLT_LI"
    counterpart = dict(zip(GSD_METHODS, GS_METHODS))
    slower = [f"{m}>={counterpart[m]}" for m in GSD_METHODS if not avg[m] < gs_avg[counterpart[m]]]
    ok = magnitude and ordering and not slower
    acceptance_log(
        3, ok, f"{fmt_averages(report)}; magnitude={magnitude} order={ordering} "
        f"derivative-not-faster={slower or 'none'}"
    )
    assert ok


def test_criterion_04_accuracy_growth(gs_reports, gsd_reports, acceptance_log):
    ratios = {}
    for reports, fast, slow in ((gs_reports, "LT_LI", ("PKC", "GE")), (gsd_reports, "DLT_LI", ("DKC", "DGE"))):
        for m in slow:
            ratios[f"{m}/{fast}"] = [reports[eps].average(m) / reports[eps].average(fast) for eps in (1e-4, 1e-6)]
    ok = all(hi > lo for lo, hi in ratios.values())
    acceptance_log(4, ok, ", ".join(f"{k} {lo:.2f}->{hi:.2f}" for k, (lo, hi) in ratios.items()))
    assert ok


def _with_fresh_oracle_constants(problem):
    L_hat, M_hat = estimate_constants(problem)
    return problem.__class__(**{**problem.__dict__, "known_L": L_hat, "known_M": M_hat})


class MinorantChecker:
    """Observer that samples every newly constructed interval once (intervals never change under KC)."""

    def __init__(self, problem, smooth, points=10_000):
        self.problem, self.smooth, self.points = problem, smooth, points
        self.seen = set()
        self.worst = -np.inf

    def __call__(self, table, t):
        for j in range(table.k - 1):
            x0, x1 = table.xs[j], table.xs[j + 1]
            if (x0, x1) in self.seen:
                continue
            self.seen.add((x0, x1))
            grid = np.linspace(x0, x1, self.points)
            f = self.problem.f(grid)
            m = table.estimates[j]
            if self.smooth:
                bound, _ = eval_support(x0, x1, table.zs[j], table.zs[j + 1], table.dzs[j], table.dzs[j + 1], m, grid)
            else:
                bound = tent(grid, x0, x1, table.zs[j], table.zs[j + 1], m)
            excess = np.max((bound - f) / (1.0 + np.abs(f)))
            self.worst = max(self.worst, float(excess))


def test_criterion_05_minorants(acceptance_log):
    problems = shipped_fixtures()[:10] + [inst.problem for inst in pinter_suite(SEED, 10)]
    worst, intervals = -np.inf, 0
    for problem in problems:
        problem = _with_fresh_oracle_constants(problem)
        for label, smooth in (("PKC", False), ("DKC", True)):
            checker = MinorantChecker(problem, smooth)
            method_from_label(label, eps=1e-4).solve(problem, observer=checker)
            worst = max(worst, checker.worst)
            intervals += len(checker.seen)
    ok = worst <= 1e-9
    acceptance_log(5, ok, f"{len(problems)} problems, {intervals} intervals, max relative excess {worst:.2e}")
    assert ok


def test_criterion_06_margins(suite, acceptance_log):
    r = 1.1
    beta = margin_bound(r)
    violations, checked = 0, 0

    def observer(table, t):
        nonlocal violations, checked
        width = table.widths
        g = table.geometry
        left = g.y_prime - table.xs[:-1] < beta * width
        right = table.xs[1:] - g.y < beta * width
        violations += int(np.sum(left | right | g.degenerate))
        checked += width.size

    for problem in suite:
        method_from_label("DGE", r=r, eps=1e-4).solve(problem, observer=observer)
    ok = violations == 0
    acceptance_log(6, ok, f"beta={beta:.4e}, {checked} interval checks, {violations} violations")
    assert ok


def test_criterion_07_geometry_identities(acceptance_log):
    rng = np.random.default_rng(7)
    n = 10_000
    x0 = rng.uniform(-10, 10, n)
    w = 10.0 ** rng.uniform(-3, 1, n)
    x1 = x0 + w
    z0, z1 = rng.normal(0, 5, (2, n))
    d0, d1 = rng.normal(0, 5, (2, n))
    v, _ = rate_v(x0, x1, z0, z1, d0, d1)
    m = np.maximum(v, 1e-3) * rng.uniform(1.01, 4.0, n)
    g = support_geometry(x0, x1, z0, z1, d0, d1, m)
    assert not g.degenerate.any()

    value_scale = 1 + np.abs(z0) + np.abs(z1) + (np.abs(d0) + np.abs(d1)) * w + m * w**2
    slope_scale = 1 + np.abs(d0) + np.abs(d1) + m * w
    left_v, left_s = _phi_left(g.y_prime, x0, z0, d0, m)
    mid_v, mid_s = _pi(g.y_prime, x1, z1, d1, m, g.y)
    right_v, right_s = _phi_right(g.y, x1, z1, d1, m)
    mid_vy, mid_sy = _pi(g.y, x1, z1, d1, m, g.y)
    c1 = max(
        np.max(np.abs(left_v - mid_v) / value_scale),
        np.max(np.abs(left_s - mid_s) / slope_scale),
        np.max(np.abs(right_v - mid_vy) / value_scale),
        np.max(np.abs(right_s - mid_sy) / slope_scale),
    )
    # pi'(x_bar) / m is the distance from x_bar to the true vertex; coordinates are
    # absolute, so it is measured relative to their magnitude
    _, vertex_slope = _pi(g.x_bar, x1, z1, d1, m, g.y)
    vertex = np.max(np.abs(vertex_slope) / (m * (1 + np.abs(x0) + np.abs(x1))))

    u = rng.uniform(0.0, 1.0, (n, 16))
    xs = g.y_prime[:, None] + u * (g.y - g.y_prime)[:, None]
    inside = (xs > g.y_prime[:, None]) & (xs < g.y[:, None])
    col = lambda a: a[:, None]
    pi_vals, _ = _pi(xs, col(x1), col(z1), col(d1), col(m), col(g.y))
    phi = eval_nonsmooth_bound(col(x0), col(x1), col(z0), col(z1), col(d0), col(d1), col(m), xs)
    gap = pi_vals - phi
    # the exact gap is m * (distance to the nearer contact point)^2
    expected = col(m) * np.minimum((xs - col(g.y_prime)) ** 2, (xs - col(g.y)) ** 2)
    resolvable = inside & (expected > 1e-12 * col(value_scale))
    strict = bool(np.all(gap[resolvable] > 0))
    above = bool(np.all(gap[inside] >= -1e-12 * np.broadcast_to(col(value_scale), xs.shape)[inside]))

    ok = c1 <= 1e-8 and vertex <= 1e-12 and strict and above
    acceptance_log(
        7, ok, f"{n} intervals: C1 mismatch {c1:.1e}, vertex offset {vertex:.1e}, "
        f"pi>Phi strictly at {int(resolvable.sum())} interior points"
    )
    assert ok


def test_criterion_08_quadratic_one_shot(acceptance_log):
    from lipgo import Problem

    rng = np.random.default_rng(8)
    worst_rate, worst_x, interior = 0.0, 0.0, 0
    for _ in range(100):
        c, q, n0 = rng.uniform(0.1, 10), rng.uniform(-20, 20), rng.uniform(-5, 5)
        a, b = -5.0, 5.0
        f = lambda x, c=c, q=q, n0=n0: 0.5 * c * x**2 + q * x + n0
        df = lambda x, c=c, q=q: c * x + q
        v, _ = rate_v(a, b, f(a), f(b), df(a), df(b))
        worst_rate = max(worst_rate, abs(float(v) - c) / c)
        x_min = -q / c
        if a < x_min < b:
            interior += 1
            problem = Problem("quad", a, b, f=f, df=df, known_M=c)
            result = method_from_label("DKC", max_trials=3).solve(problem)
            worst_x = max(worst_x, abs(result.trials[2].x - x_min))
    ok = worst_rate <= 1e-10 and worst_x <= 1e-10 and interior > 0
    acceptance_log(
        8, ok, f"rate_v rel err {worst_rate:.1e}; third DKC trial err {worst_x:.1e} on {interior} interior cases"
    )
    assert ok


PINTER_TEMPLATE = "0.025*(x - {s})^2 + sin((x - {s}) + (x - {s})^2)^2 + sin(x - {s})^2"


def _fd_error(f, df, a, b, rng):
    h = 1e-6
    xs = rng.uniform(a + 1e-3 * (b - a), b - 1e-3 * (b - a), 1000)
    fd = (f(xs + h) - f(xs - h)) / (2 * h)
    return float(np.max(np.abs(df(xs) - fd) / np.maximum(1.0, np.abs(fd))))


def test_criterion_09_differentiator(acceptance_log):
    rng = np.random.default_rng(9)
    worst, count = 0.0, 0
    for problem in shipped_fixtures():
        worst = max(worst, _fd_error(problem.f, problem.df, problem.a, problem.b, rng))
        count += 1
    for inst in pinter_suite(SEED, 100):
        ast = parse_expression(PINTER_TEMPLATE.format(s=repr(inst.x_star)))
        f, df = compile_expression(ast), compile_expression(differentiate(ast))
        worst = max(worst, _fd_error(f, df, -5.0, 5.0, rng))
        count += 1
    ok = worst <= 1e-6
    acceptance_log(9, ok, f"{count} expressions, max relative error {worst:.1e}")
    assert ok


def test_criterion_10_determinism(suite, gs_reports, gsd_reports, acceptance_log):
    first = [gs_reports[1e-4], gsd_reports[1e-4]]
    second = [
        run_bench(suite, GS_METHODS, eps=1e-4, r=1.1, r_auto=True, parallel=2),
        run_bench(suite, GSD_METHODS, eps=1e-4, r=1.1, parallel=2),
    ]
    ok = all(
        render_csv(x) == render_csv(y) and render_markdown(x) == render_markdown(y)
        for x, y in zip(first, second)
    )
    assert sorted(first[0].methods + first[1].methods) == sorted(METHOD_LABELS)
    acceptance_log(10, ok, "serial and --parallel 2 reports byte-identical (CSV and Markdown, 12 methods)")
    assert ok
