"""Independent reference computations used by the tests.

Nothing here imports the code under test's numerical paths except where a
grid search must score the very same latency functions.
"""
import math
from fractions import Fraction

import numpy as np
from mpmath import mp, mpf


def erlang_c_factorial(c, g):
    """Literal factorial form of the Erlang C probability, in exact rationals."""
    g = Fraction(g)
    tail = Fraction(c) * g**c / (math.factorial(c) * (c - g))
    head = sum(g**r / math.factorial(r) for r in range(c))
    return float(tail / (head + tail))


def lq_factorial(c, g):
    g = Fraction(g)
    return float(g / (c - g) * Fraction(erlang_c_factorial(c, g)))


def mm1_wait(lam, mu):
    """M/M/1 mean wait in queue, rho / (mu - lam)."""
    return (lam / mu) / (mu - lam)


def mp_eval(expr, dps=40):
    with mp.workdps(dps):
        return expr(mp, mpf)


def grid_minimum(objective, hi, step=1e-4):
    """Min of ``objective`` over eta = 0, step, 2*step, ... strictly below ``hi``.

    Returns (best_value, best_eta, values, etas).
    """
    n = int(math.floor(min(hi, 1.0) / step))
    etas = [i * step for i in range(n + 1)]
    if etas and etas[-1] >= hi:
        etas.pop()
    values = np.array([objective(e) for e in etas])
    i = int(np.argmin(values))
    return float(values[i]), etas[i], values, np.array(etas)
