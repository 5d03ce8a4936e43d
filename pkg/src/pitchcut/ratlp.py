"""Exact rational LP solver: bounded-variable primal simplex, Bland's rule.

Small and deliberate.  All arithmetic is Fraction, so there are no
tolerances anywhere; optimality, feasibility and duality are checked
exactly by assertions on every optimal solve.  Variable bounds are kept
out of the row system (nonbasic variables sit at a finite lower or a
finite upper bound), rows get one slack each, and infeasibility is
detected by a phase-1 with artificial columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

SENSES = (">=", "<=", "=")

_MAX_PIVOTS = 200000


class LPModel:
    """min obj.x subject to rows and variable bounds.

    Lower bounds must be finite; upper bounds may be None (unbounded).
    Rows are (coefficient map, sense, rhs) with sense in {>=, <=, =}.
    """

    def __init__(self):
        self.lower = []
        self.upper = []
        self.objective = []
        self.rows = []

    @property
    def n_vars(self):
        return len(self.lower)

    def add_var(self, lb=0, ub=None, obj=0):
        lb = Fraction(lb)
        ub = None if ub is None else Fraction(ub)
        if ub is not None and ub < lb:
            raise ValueError("upper bound below lower bound")
        self.lower.append(lb)
        self.upper.append(ub)
        self.objective.append(Fraction(obj))
        return len(self.lower) - 1

    def add_row(self, coefficients, sense, rhs):
        if sense not in SENSES:
            raise ValueError("sense must be one of %r" % (SENSES,))
        coefficients = {int(j): Fraction(w) for j, w in coefficients.items()}
        for j in coefficients:
            if not 0 <= j < self.n_vars:
                raise ValueError("row references unknown variable %d" % j)
        self.rows.append((coefficients, sense, Fraction(rhs)))
        return len(self.rows) - 1


@dataclass(frozen=True)
class LPSolution:
    status: str
    primal: tuple
    objective: Fraction
    duals: tuple


class _Tableau:
    """One simplex run over the expanded column system.

    Columns are structural variables, then one slack per row (sign -1
    for >= rows so slacks keep bounds [0, inf)), then one artificial per
    row.  Artificials carry the phase-1 objective and are frozen to
    [0, 0] afterwards.
    """

    def __init__(self, model, start="phase1"):
        m = len(model.rows)
        nv = model.n_vars
        self.m = m
        self.nv = nv
        self.model = model
        self.lower = list(model.lower)
        self.upper = list(model.upper)
        for j, lb in enumerate(self.lower):
            if lb is None:
                raise ValueError("variable %d needs a finite lower bound" % j)
        self.slack_sign = []
        for _, sense, _ in model.rows:
            self.slack_sign.append(-1 if sense == ">=" else 1)
            if sense == "=":
                self.lower.append(Fraction(0))
                self.upper.append(Fraction(0))
            else:
                self.lower.append(Fraction(0))
                self.upper.append(None)

        if start == "upper":
            # caller certified the all-upper-bounds point: slack basis,
            # no artificial columns, no phase 1
            self.ncols = nv + m
            self.T = []
            self.basis = []
            self.xval = [self.upper[j] for j in range(nv)]
            self.xval.extend([Fraction(0)] * m)
            for i, (coefficients, sense, rhs) in enumerate(model.rows):
                row = [Fraction(0)] * self.ncols
                for j, w in coefficients.items():
                    row[j] = w
                row[nv + i] = Fraction(self.slack_sign[i])
                lhs = sum(
                    w * self.xval[j] for j, w in coefficients.items()
                )
                slack = (rhs - lhs) * self.slack_sign[i]
                assert slack >= 0, "upper start handed an infeasible row"
                if self.slack_sign[i] < 0:
                    row = [-w for w in row]
                self.T.append(row)
                self.basis.append(nv + i)
                self.xval[nv + i] = slack
            return

        # artificials
        self.lower.extend([Fraction(0)] * m)
        self.upper.extend([None] * m)
        self.ncols = nv + 2 * m

        # dense row system A x = b over all columns
        self.T = []
        self.basis = []
        self.xval = [self.lower[j] for j in range(self.ncols)]
        for i, (coefficients, sense, rhs) in enumerate(model.rows):
            row = [Fraction(0)] * self.ncols
            for j, w in coefficients.items():
                row[j] = w
            row[nv + i] = Fraction(self.slack_sign[i])
            residual = rhs - sum(
                row[j] * self.xval[j] for j in range(nv + m) if row[j]
            )
            sign = -1 if residual < 0 else 1
            row[nv + m + i] = Fraction(sign)
            if sign < 0:
                row = [-w for w in row]
                rhs = -rhs
                residual = -residual
            self.T.append(row)
            self.basis.append(nv + m + i)
            self.xval[nv + m + i] = residual

    def is_artificial(self, j):
        return j >= self.nv + self.m

    def _reduced_costs(self, cost):
        # w = c_B^T T, then d_j = c_j - w_j
        w = [Fraction(0)] * self.ncols
        for i in range(self.m):
            cb = cost[self.basis[i]]
            if cb:
                row = self.T[i]
                for j in range(self.ncols):
                    if row[j]:
                        w[j] += cb * row[j]
        return w

    def _pivot(self, row, col):
        T = self.T
        piv = T[row][col]
        if piv != 1:
            T[row] = [w / piv for w in T[row]]
        prow = T[row]
        for i in range(self.m):
            if i == row:
                continue
            factor = T[i][col]
            if factor:
                T[i] = [a - factor * b for a, b in zip(T[i], prow)]
        self.basis[row] = col

    def run(self, cost):
        """Bland-rule simplex under the given column costs.

        Returns "optimal" or "unbounded"; self.xval holds the point.
        """
        in_basis = set(self.basis)
        for _ in range(_MAX_PIVOTS):
            w = self._reduced_costs(cost)
            enter = -1
            direction = 0
            for j in range(self.ncols):
                if j in in_basis:
                    continue
                lj, uj = self.lower[j], self.upper[j]
                if uj is not None and lj == uj:
                    continue  # fixed column can never move
                d = cost[j] - w[j]
                if d < 0 and self.xval[j] != uj:
                    enter, direction = j, 1
                    break
                if d > 0 and self.xval[j] != lj:
                    enter, direction = j, -1
                    break
            if enter < 0:
                return "optimal"

            # ratio test: how far can x_enter move toward its other bound
            span = None
            if self.upper[enter] is not None:
                span = self.upper[enter] - self.lower[enter]
            best_t = None
            leave_row = -1
            for i in range(self.m):
                g = self.T[i][enter] * direction
                if g == 0:
                    continue
                k = self.basis[i]
                if g > 0:
                    limit = (self.xval[k] - self.lower[k]) / g
                else:
                    if self.upper[k] is None:
                        continue
                    limit = (self.upper[k] - self.xval[k]) / (-g)
                if best_t is None or limit < best_t or (
                    limit == best_t and k < self.basis[leave_row]
                ):
                    best_t = limit
                    leave_row = i
            if best_t is None and span is None:
                return "unbounded"

            if best_t is None or (span is not None and span <= best_t):
                # bound flip, no basis change
                t = span
                for i in range(self.m):
                    g = self.T[i][enter] * direction
                    if g:
                        self.xval[self.basis[i]] -= g * t
                self.xval[enter] += direction * t
                continue

            t = best_t
            for i in range(self.m):
                g = self.T[i][enter] * direction
                if g:
                    self.xval[self.basis[i]] -= g * t
            self.xval[enter] += direction * t
            leave = self.basis[leave_row]
            # snap the leaving variable onto the bound it hit
            if self.T[leave_row][enter] * direction > 0:
                self.xval[leave] = self.lower[leave]
            else:
                self.xval[leave] = self.upper[leave]
            self._pivot(leave_row, enter)
            in_basis.discard(leave)
            in_basis.add(enter)
        raise AssertionError("pivot limit hit, Bland's rule should terminate")

    def drive_out_artificials(self):
        for i in range(self.m):
            if not self.is_artificial(self.basis[i]):
                continue
            target = -1
            for j in range(self.nv + self.m):
                lj, uj = self.lower[j], self.upper[j]
                if uj is not None and lj == uj:
                    continue
                if j not in self.basis and self.T[i][j] != 0:
                    target = j
                    break
            if target >= 0:
                # degenerate swap: the artificial sits at zero, values keep
                self._pivot(i, target)
        # freeze every artificial at zero
        for j in range(self.nv + self.m, self.ncols):
            self.upper[j] = Fraction(0)

    def duals(self, cost):
        w = self._reduced_costs(cost)
        y = []
        for i in range(self.m):
            slack = self.nv + i
            y.append(self.slack_sign[i] * w[slack])
        return y


def _verify_optimal(model, primal, duals, objective_value):
    # exact KKT check; any failure here is a solver bug
    for j in range(model.n_vars):
        assert model.lower[j] <= primal[j], "lower bound violated"
        assert model.upper[j] is None or primal[j] <= model.upper[j], (
            "upper bound violated"
        )
    dual_obj = Fraction(0)
    for (coefficients, sense, rhs), y in zip(model.rows, duals):
        lhs = sum(w * primal[j] for j, w in coefficients.items())
        if sense == ">=":
            assert lhs >= rhs, "row violated"
            assert y >= 0, "dual sign"
        elif sense == "<=":
            assert lhs <= rhs, "row violated"
            assert y <= 0, "dual sign"
        else:
            assert lhs == rhs, "equality row violated"
        assert y == 0 or lhs == rhs, "complementary slackness (rows)"
        dual_obj += y * rhs
    for j in range(model.n_vars):
        d = model.objective[j]
        for (coefficients, _, _), y in zip(model.rows, duals):
            if y and j in coefficients:
                d -= y * coefficients[j]
        if d > 0:
            assert primal[j] == model.lower[j], "reduced cost sign at lower"
            dual_obj += d * model.lower[j]
        elif d < 0:
            assert model.upper[j] is not None and primal[j] == model.upper[j], (
                "reduced cost sign at upper"
            )
            dual_obj += d * model.upper[j]
    assert dual_obj == objective_value, "strong duality gap"


def _upper_point_feasible(model):
    """True when every variable has a finite upper bound and the
    all-upper-bounds point satisfies every row; lets the solver start
    on a slack basis with no phase 1.  Cut LPs over the [0,1] box hit
    this constantly: valid cuts hold at the all-ones point."""
    if any(ub is None for ub in model.upper):
        return False
    for coefficients, sense, rhs in model.rows:
        lhs = sum(w * model.upper[j] for j, w in coefficients.items())
        if sense == ">=" and lhs < rhs:
            return False
        if sense == "<=" and lhs > rhs:
            return False
        if sense == "=" and lhs != rhs:
            return False
    return True


def _solve_once(model):
    if _upper_point_feasible(model):
        tab = _Tableau(model, start="upper")
    else:
        tab = _Tableau(model)
        m = tab.m
        phase1 = [Fraction(0)] * tab.ncols
        for j in range(tab.nv + m, tab.ncols):
            phase1[j] = Fraction(1)
        status = tab.run(phase1)
        assert status == "optimal", "phase 1 is bounded below by zero"
        if sum(tab.xval[j] for j in range(tab.nv + m, tab.ncols)) > 0:
            return LPSolution(
                status="infeasible", primal=None, objective=None, duals=None
            )
        tab.drive_out_artificials()
    cost = [Fraction(0)] * tab.ncols
    for j in range(tab.nv):
        cost[j] = model.objective[j]
    status = tab.run(cost)
    if status == "unbounded":
        return LPSolution(
            status="unbounded", primal=None, objective=None, duals=None
        )
    primal = tuple(tab.xval[j] for j in range(tab.nv))
    objective_value = sum(
        model.objective[j] * primal[j] for j in range(tab.nv)
    )
    duals = tuple(tab.duals(cost))
    _verify_optimal(model, primal, duals, objective_value)
    return LPSolution(
        status="optimal",
        primal=primal,
        objective=objective_value,
        duals=duals,
    )


def solve_lp(model, row_callback=None):
    """Solve the model exactly, optionally with row generation.

    When row_callback is given it is called with each optimal solution
    and may return an iterable of (coefficients, sense, rhs) rows to
    append; solving repeats until the callback returns nothing.  The
    model object accumulates the generated rows.
    """
    while True:
        solution = _solve_once(model)
        if solution.status != "optimal" or row_callback is None:
            return solution
        new_rows = row_callback(solution)
        new_rows = list(new_rows) if new_rows else []
        if not new_rows:
            return solution
        for coefficients, sense, rhs in new_rows:
            model.add_row(coefficients, sense, rhs)
