"""
A small randomized benchmark
============================

Twenty functions from the seeded randomized class, all twelve methods,
rendered as a Markdown table.  Use ``lipgo bench`` for the full 100-function
suite.
"""

from lipgo import METHOD_LABELS
from lipgo.bench import render_markdown, run_bench
from lipgo.testbed.pinter import pinter_suite

problems = [inst.problem for inst in pinter_suite(seed=2024, count=20)]

# r starts at 1.1 and rises by 0.1 for a problem that is missed
report = run_bench(problems, METHOD_LABELS, eps=1e-4, r=1.1, r_auto=True, oracle_n=200_001)
print(render_markdown(report))

###############################################################################
# Averages only, fastest first.

for label, avg in sorted(report.averages().items(), key=lambda kv: kv[1]):
    print(f"{label:7s} {avg:8.2f}")
