"""Exact DP and FPTAS solvers for min-knapsack covering problems.

Both solvers minimise a nonnegative rational objective over 0/1 points
satisfying the integer cover constraint sum r_i z_i >= need.  The exact
solver runs the pseudo-polynomial DP over profit states and refuses to
build tables beyond the cell budget; the FPTAS rounds costs and runs a
DP over cost states, so its table size depends on n and 1/eps only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import kernels
from .core import BudgetExceededError, InfeasibleInstanceError, as_point

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class KnapSolution:
    """A feasible chosen set together with its exact objective value.

    mode is "exact" or "fptas"; eps records the tolerance in the latter
    case.  value is always the objective evaluated on chosen, exactly,
    even in fptas mode (only optimality is approximate).
    """

    value: Fraction
    chosen: tuple
    mode: str
    eps: Fraction = None


def _coerce_objective(objective, n):
    obj = [Fraction(v) for v in objective]
    if len(obj) != n:
        raise ValueError("objective must have %d entries" % n)
    for v in obj:
        if v < 0:
            raise ValueError("objective entries must be nonnegative")
    return obj


def _check_budget(cells, budget):
    if cells > budget:
        raise BudgetExceededError(
            "DP table needs %d cells, budget is %d" % (cells, budget)
        )


def _exact_cover(r, objective, need, budget):
    """Exact minimum of a rational objective under sum r_i z_i >= need."""
    if need <= 0:
        return Fraction(0), ()
    _check_budget((len(r) + 1) * (need + 1), budget)
    D = lcm(*(v.denominator for v in objective)) if objective else 1
    scaled = [int(v * D) for v in objective]
    value, chosen = kernels.min_cover_solve(r, scaled, need)
    if value is None:
        raise InfeasibleInstanceError(
            "total profit %d cannot reach %d" % (sum(r), need)
        )
    return Fraction(value, D), chosen


def _fptas_cover(r, costs, need, eps, budget):
    """(1+eps)-approximate minimum under sum r_i z_i >= need.

    Zero-cost items are taken up front (they can only help coverage).
    The rest runs a guess loop on the optimal value v: costs are rounded
    up to multiples of delta = eps*v/(2m), a max-profit DP over rounded
    cost states 0..B with B = ceil(2m/eps) + m looks for the cheapest
    state covering the residual need, and the guess doubles until one is
    found.  The first hit costs at most (1+eps) times the optimum.
    """
    if need <= 0:
        return Fraction(0), ()
    n = len(r)
    taken = []
    cover = 0
    for i in range(n):
        if costs[i] == 0 and cover < need:
            taken.append(i)
            cover += r[i]
    if cover >= need:
        return Fraction(0), tuple(taken)
    residual = need - cover
    # paying items with zero profit never help
    paying = [i for i in range(n) if costs[i] > 0 and r[i] > 0]
    if sum(r[i] for i in paying) < residual:
        raise InfeasibleInstanceError(
            "total profit cannot reach the cover target"
        )
    # fractional greedy by density is the LP bound, hence <= OPT
    acc = 0
    lb = Fraction(0)
    for i in sorted(paying, key=lambda i: (Fraction(costs[i], r[i]), i)):
        if acc + r[i] >= residual:
            lb += costs[i] * Fraction(residual - acc, r[i])
            break
        acc += r[i]
        lb += costs[i]
    total = sum(costs[i] for i in paying)
    m = len(paying)
    B = math.ceil(Fraction(2 * m) / eps) + m
    _check_budget((m + 1) * (B + 1), budget)
    sub_r = [r[i] for i in paying]
    guess = lb
    while True:
        delta = eps * guess / (2 * m)
        rounded = [math.ceil(costs[i] / delta) for i in paying]
        reach, chosen_sub = kernels.max_profit_solve(rounded, sub_r, B, residual)
        if reach is not None:
            picked = [paying[k] for k in chosen_sub]
            value = sum(costs[i] for i in picked)
            return value, tuple(sorted(taken + picked))
        if guess >= total:
            # at guess = total every rounded cost fits inside B
            raise AssertionError("guess loop exhausted without a cover")
        guess = min(2 * guess, total)


def solve_exact(inst, objective, budget=None):
    """Exact minimizer of objective.x over feasible 0/1 points.

    Ties between optimal sets break toward the lexicographically
    smallest index tuple.  Raises BudgetExceededError when the profit
    DP would exceed the cell budget (default 10^8).
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    obj = _coerce_objective(objective, inst.n)
    value, chosen = _exact_cover(inst.r, obj, inst.q, budget)
    return KnapSolution(value=value, chosen=chosen, mode="exact")


def solve_fptas(inst, objective, eps, budget=None):
    """Feasible solution with objective value at most (1+eps) optimal."""
    budget = DEFAULT_BUDGET if budget is None else budget
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    obj = _coerce_objective(objective, inst.n)
    value, chosen = _fptas_cover(inst.r, obj, inst.q, eps, budget)
    return KnapSolution(value=value, chosen=chosen, mode="fptas", eps=eps)


def solve_Palpha(inst, xbar, alpha, mode="exact", eps=None, budget=None):
    """Solve the subproblem behind the pitch-2 separation at level alpha.

    Minimises sum over z of xbar_i z_i, doubled on items with p_i >=
    alpha, subject to sum p_i (1 - z_i) <= 1 - alpha, i.e. the integer
    cover sum r_i z_i >= sum(r) - q + alpha*q.  alpha must be a multiple
    of 1/q.  Returns the chosen set I = {i : z_i = 1}.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    r_alpha = alpha * inst.q
    if r_alpha.denominator != 1:
        raise ValueError("alpha must be an integer multiple of 1/q")
    x = as_point(xbar, inst.n)
    obj = [
        x[i] if inst.profits[i] < alpha else 2 * x[i] for i in range(inst.n)
    ]
    need = sum(inst.r) - inst.q + int(r_alpha)
    if mode == "exact":
        value, chosen = _exact_cover(inst.r, obj, need, budget)
        return KnapSolution(value=value, chosen=chosen, mode="exact")
    if mode == "fptas":
        if eps is None:
            raise ValueError("fptas mode needs eps")
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        value, chosen = _fptas_cover(inst.r, obj, need, eps, budget)
        return KnapSolution(value=value, chosen=chosen, mode="fptas", eps=eps)
    raise ValueError("mode must be 'exact' or 'fptas'")
