"""
Smooth support functions
========================

With derivatives available each interval gets a C1 piece-wise quadratic
minorant.  On a quadratic and the exact curvature the middle parabola is
the function itself, so one step lands on the minimizer.
"""

import numpy as np

from lipgo import Problem, method_from_label
from lipgo.smooth import classify_and_characterize, eval_support, rate_v, support_geometry

f = lambda x: x**2
df = lambda x: 2 * x
data = (-1.0, 2.0, f(-1.0), f(2.0), df(-1.0), df(2.0))

v, _ = rate_v(*data)
print(f"curvature rate on [-1, 2]: {float(v):.6f}")

geometry = support_geometry(*data, 2.0)
R, case = classify_and_characterize(*data, 2.0, geometry)
print(f"y'={float(geometry.y_prime):.3f}  y={float(geometry.y):.3f}  vertex={float(geometry.x_bar):.3f}")
print(f"characteristic={float(R):.3f}  case={int(case)}")

###############################################################################
# A larger curvature bound gives a looser minorant: the middle parabola
# shrinks and the two outer concave pieces take over.

grid = np.linspace(-1, 2, 7)
for m in (2.0, 4.0, 8.0):
    psi, _ = eval_support(*data, m, grid)
    print(f"m={m:3.0f}  gap to f: " + " ".join(f"{g:6.3f}" for g in f(grid) - psi))

###############################################################################
# The derivative methods on the same problem with the exact constant.

problem = Problem("square", -1.0, 2.0, f=f, df=df, known_M=2.0)
result = method_from_label("DKC", max_trials=3).solve(problem)
print("DKC trials:", [round(t.x, 12) for t in result.trials])
