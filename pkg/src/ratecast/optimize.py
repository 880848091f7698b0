"""Derivative-free simplex minimizer used by the estimation routines.

A deliberately plain Nelder-Mead: deterministic, no adaptive coefficients,
convergence judged on the spread of function values across the simplex. That
spread criterion (rather than a joint x/f tolerance) is what the estimation
code relies on, which is why this lives here instead of wrapping a library
optimizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

REFLECT = 1.0
EXPAND = 2.0
CONTRACT = 0.5
SHRINK = 0.5


@dataclass(frozen=True)
class MinimizeResult:
    """Outcome of a simplex minimization."""

    x: np.ndarray
    fun: float
    iterations: int
    converged: bool


def nelder_mead(func: Callable[[np.ndarray], float], x0, step: float = 0.1,
                spread_tol: float = 1e-10, max_iter: int | None = None) -> MinimizeResult:
    """Minimize ``func`` from ``x0`` with a Nelder-Mead simplex.

    Args:
        func: Objective mapping a 1-D point to a float; may return large
            finite penalties for infeasible regions.
        x0: Starting point; the initial simplex adds ``step`` along each axis.
        step: Axis perturbation used to build the initial simplex.
        spread_tol: Converged when max-min of the vertex function values
            drops below this.
        max_iter: Iteration cap, default ``200 * dim``.

    Returns:
        The best vertex found, its value, and the iteration count.
    """
    x0 = np.asarray(x0, dtype=float)
    dim = x0.size
    if dim == 0:
        return MinimizeResult(x=x0, fun=float(func(x0)), iterations=0, converged=True)
    if max_iter is None:
        max_iter = 200 * dim

    simplex = np.tile(x0, (dim + 1, 1))
    for i in range(dim):
        simplex[i + 1, i] += step
    values = np.array([func(v) for v in simplex])

    converged = False
    iteration = 0
    while iteration < max_iter:
        order = np.argsort(values, kind="stable")
        simplex = simplex[order]
        values = values[order]
        if values[-1] - values[0] < spread_tol:
            converged = True
            break
        iteration += 1

        centroid = simplex[:-1].mean(axis=0)
        reflected = centroid + REFLECT * (centroid - simplex[-1])
        f_reflected = func(reflected)
        if f_reflected < values[0]:
            expanded = centroid + EXPAND * (centroid - simplex[-1])
            f_expanded = func(expanded)
            if f_expanded < f_reflected:
                simplex[-1], values[-1] = expanded, f_expanded
            else:
                simplex[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[-2]:
            simplex[-1], values[-1] = reflected, f_reflected
            continue
        if f_reflected < values[-1]:
            contracted = centroid + CONTRACT * (centroid - simplex[-1])
        else:
            contracted = centroid - CONTRACT * (centroid - simplex[-1])
        f_contracted = func(contracted)
        if f_contracted < min(f_reflected, values[-1]):
            simplex[-1], values[-1] = contracted, f_contracted
            continue
        for i in range(1, dim + 1):
            simplex[i] = simplex[0] + SHRINK * (simplex[i] - simplex[0])
            values[i] = func(simplex[i])

    order = np.argsort(values, kind="stable")
    return MinimizeResult(
        x=simplex[order[0]].copy(),
        fun=float(values[order[0]]),
        iterations=iteration,
        converged=converged,
    )
