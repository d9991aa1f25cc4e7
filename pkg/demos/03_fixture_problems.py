"""
Problems from fixture files
===========================

Fixture files describe a problem as an expression; the derivative is
taken symbolically.  This walks through the bundled set with the two
local-tuning methods.
"""

from lipgo import method_from_label, parse_fixture, shipped_fixtures

text = """
name = wavy
interval = 0 6
expr = sin(x) + sin(10*x/3) + 0.1*x
lipschitz_f = 4.5
"""
problem = parse_fixture(text)
print(problem.name, "f'(1) =", problem.df(1.0))

result = method_from_label("DLT_LI", r=1.2).solve(problem)
print(f"DLT_LI: {result.n_trials} trials, minimum {result.best_f:.6f} at {result.best_x:.6f}")

###############################################################################
# Bundled fixtures, LT against DLT.

print(f"{'problem':20s} {'LT':>5s} {'DLT':>5s}")
for p in shipped_fixtures():
    counts = [method_from_label(label, r=1.2).solve(p).n_trials for label in ("LT", "DLT")]
    print(f"{p.name:20s} {counts[0]:5d} {counts[1]:5d}")
