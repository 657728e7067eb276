"""Regenerates fda_reference.csv from third-party FDA implementations.

FDA1 and FDA3 come from jMetalPy (jmetal.problem.multiobjective.fda), FDA2
from pymoo's vendored fda2_deb. Both packages evaluate the raw time t, so the
sampled times stay inside one period.

    PYTHONPATH=<jmetalpy> python3 make_fda_reference.py <pymoo/vendor/gta.py>
"""

import importlib.util
import random
import sys

import numpy as np
from jmetal.core.solution import FloatSolution
from jmetal.problem.multiobjective.fda import FDA1, FDA3

spec = importlib.util.spec_from_file_location("gta", sys.argv[1])
gta = importlib.util.module_from_spec(spec)
spec.loader.exec_module(gta)

rng = random.Random(20221017)
times = [0.0, 0.3, 0.7, 1.2, 1.9]
rows = []


def concrete(cls):
    # this jMetalPy release leaves a few abstract hooks unimplemented
    return type(cls.__name__, (cls,), {
        "name": lambda self: cls.__name__,
        "number_of_constraints": lambda self: 0,
        "number_of_objectives": lambda self: 2,
    })


def jmetal_eval(problem, x, t):
    problem.time = t
    sol = FloatSolution(problem.lower_bound, problem.upper_bound, 2)
    sol.variables = list(x)
    problem.evaluate(sol)
    return sol.objectives


for name, cls, dim in (("fda1", FDA1, 10), ("fda3", FDA3, 10)):
    prob = concrete(cls)(dim)
    for t in times:
        for _ in range(4):
            x = [rng.uniform(0.0, 1.0)] + [rng.uniform(-1.0, 1.0) for _ in range(dim - 1)]
            f = jmetal_eval(prob, x, t)
            rows.append((name, t, x, f))

for t in times:
    for _ in range(4):
        x = [rng.uniform(0.0, 1.0)] + [rng.uniform(-1.0, 1.0) for _ in range(12)]
        f = gta.fda2_deb(np.array(x), t)
        rows.append(("fda2", t, x, [float(f[0]), float(f[1])]))

print("problem,t,f1,f2,x")
for name, t, x, f in rows:
    print(f"{name},{t!r},{f[0]!r},{f[1]!r}," + " ".join(repr(v) for v in x))
