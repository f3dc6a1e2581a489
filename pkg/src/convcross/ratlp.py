# Copyright (C) 2026 The convcross developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as
# published by the Free Software Foundation, either version 3 of the
# License, or (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.

# You should have received a copy of the GNU Affero General Public
# License along with this program.  If not, see
# <http://www.gnu.org/licenses/>.
# ======================================================================
"""
Exact rational linear programming.

Every problem is

    maximize   c . x
    subject to a_i . x <= b_i   (ineqs)
               e_k . x  = d_k   (eqs)

with x free. Solving goes through a dense two phase simplex tableau
with Bland's pivoting rule, so degenerate problems terminate. Every
OPTIMAL outcome carries dual multipliers (u >= 0 for ineqs, v free for
eqs) with A^T u + E^T v = c and b . u + d . v = c . x exactly.
"""

import logging

from enum import Enum
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from convcross.exceptions import InvariantViolation, LPInputError
from convcross.util import dot


logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _as_row(a, b, num_vars, what, index):
    if len(a) != num_vars:
        raise LPInputError(
            f"{what} row {index} has {len(a)} coefficients, "
            f"expected {num_vars}"
        )
    try:
        return tuple(Fraction(v) for v in a), Fraction(b)
    except (TypeError, ValueError) as e:
        raise LPInputError(f"{what} row {index}: {e}") from None


class LPProblem:
    """
    A maximization problem over free variables. Bounds must be stated
    as explicit rows, e.g. ``((-1, 0), 0)`` for ``x_0 >= 0``.
    """

    def __init__(self, num_vars: int, objective, ineqs=(), eqs=()):
        if not isinstance(num_vars, int) or num_vars < 0:
            raise LPInputError(f"invalid variable count {num_vars!r}")
        if len(objective) != num_vars:
            raise LPInputError(
                f"objective has {len(objective)} coefficients, "
                f"expected {num_vars}"
            )
        self.num_vars = num_vars
        self.objective = tuple(Fraction(v) for v in objective)
        self.ineqs = tuple(
            _as_row(a, b, num_vars, "inequality", i)
            for i, (a, b) in enumerate(ineqs)
        )
        self.eqs = tuple(
            _as_row(a, b, num_vars, "equality", i)
            for i, (a, b) in enumerate(eqs)
        )

    def __repr__(self):
        return (
            f"LPProblem(num_vars={self.num_vars}, "
            f"ineqs={len(self.ineqs)}, eqs={len(self.eqs)})"
        )


class LPOutcome(NamedTuple):
    status: LPStatus
    value: Optional[Fraction] = None
    point: Optional[Tuple[Fraction, ...]] = None
    dual: Optional[Tuple[Fraction, ...]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class Feasibility(NamedTuple):
    feasible: bool
    witness: Optional[Tuple[Fraction, ...]] = None

    def __bool__(self):
        return self.feasible


class _Tableau:
    """
    Dense tableau B^-1 [M | r] plus a reduced cost row. The columns in
    `identity` formed the starting basis, so they hold B^-1.
    """

    def __init__(self, rows, rhs, basis, identity):
        self.rows = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)
        self.identity = list(identity)
        self.ncols = len(rows[0]) if rows else 0
        self.obj = []

    def set_costs(self, costs):
        obj = list(costs) + [ZERO]
        for i, row in enumerate(self.rows):
            cb = costs[self.basis[i]]
            if cb:
                for j, v in enumerate(row):
                    if v:
                        obj[j] -= cb * v
        self.obj = obj

    def pivot(self, r, c):
        prow = self.rows[r]
        p = prow[c]
        if p != ONE:
            prow[:] = [v / p for v in prow]
        nz = [(j, v) for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            f = row[c]
            if i != r and f:
                for j, v in nz:
                    row[j] -= f * v
        f = self.obj[c]
        if f:
            for j, v in nz:
                self.obj[j] -= f * v
        self.basis[r] = c

    def run(self, forbidden=frozenset()):
        """Bland's rule. Returns False when the objective is unbounded."""
        while True:
            entering = None
            for j in range(self.ncols):
                if self.obj[j] > 0 and j not in forbidden:
                    entering = j
                    break
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)

    def column_values(self):
        values = [ZERO] * self.ncols
        for i, row in enumerate(self.rows):
            values[self.basis[i]] = row[-1]
        return values


def _sign_rows(problem):
    """Rows of the form -k x_j <= 0, which become variable signs."""
    signs = {}
    for i, (a, b) in enumerate(problem.ineqs):
        if b != 0:
            continue
        nz = [j for j, v in enumerate(a) if v]
        if len(nz) == 1 and a[nz[0]] < 0:
            signs.setdefault(nz[0], []).append(i)
    return signs


def lp_solve(problem: LPProblem) -> LPOutcome:
    n = problem.num_vars
    signs = _sign_rows(problem)
    sign_row_ids = {i for ids in signs.values() for i in ids}

    # Structural columns: one per sign constrained variable, a +/- pair
    # for every free variable.
    var_cols = []
    col_of = []
    for j in range(n):
        if j in signs:
            var_cols.append((len(col_of),))
            col_of.append((j, ONE))
        else:
            var_cols.append((len(col_of), len(col_of) + 1))
            col_of.append((j, ONE))
            col_of.append((j, -ONE))
    nstruct = len(col_of)

    kept = [i for i in range(len(problem.ineqs)) if i not in sign_row_ids]
    m_ineq = len(kept)
    m = m_ineq + len(problem.eqs)
    nslack = m_ineq

    raw_rows = []
    rhs = []
    negated = []
    for idx, i in enumerate(kept):
        a, b = problem.ineqs[i]
        raw_rows.append((a, ("slack", idx)))
        rhs.append(b)
    for a, d in problem.eqs:
        raw_rows.append((a, None))
        rhs.append(d)

    # Rows needing an artificial start column.
    artificial_of = {}
    for r in range(m):
        slack = raw_rows[r][1]
        if slack is None or rhs[r] < 0:
            artificial_of[r] = nstruct + nslack + len(artificial_of)
    ncols = nstruct + nslack + len(artificial_of)

    rows = []
    identity = []
    basis = []
    for r in range(m):
        a, slack = raw_rows[r]
        row = [ZERO] * ncols
        for c, (j, s) in enumerate(col_of):
            if a[j]:
                row[c] = s * a[j]
        if slack is not None:
            row[nstruct + slack[1]] = ONE
        flip = rhs[r] < 0
        if flip:
            row = [-v for v in row]
            rhs[r] = -rhs[r]
        negated.append(flip)
        if r in artificial_of:
            row[artificial_of[r]] = ONE
            identity.append(artificial_of[r])
        else:
            identity.append(nstruct + slack[1])
        basis.append(identity[-1])
        rows.append(row)

    tab = _Tableau(rows, rhs, basis, identity)
    tab.ncols = ncols
    artificials = frozenset(artificial_of.values())

    if artificials:
        tab.set_costs(
            [-ONE if c in artificials else ZERO for c in range(ncols)]
        )
        tab.run()
        if tab.obj[-1] != 0:
            logger.spam(f"{problem!r}: phase one ended at {-tab.obj[-1]}")
            return LPOutcome(LPStatus.INFEASIBLE)
        for r in range(m):
            if tab.basis[r] in artificials:
                row = tab.rows[r]
                for c in range(nstruct + nslack):
                    if row[c]:
                        tab.pivot(r, c)
                        break

    costs = [ZERO] * ncols
    for c, (j, s) in enumerate(col_of):
        costs[c] = s * problem.objective[j]
    tab.set_costs(costs)
    if not tab.run(forbidden=artificials):
        return LPOutcome(LPStatus.UNBOUNDED)

    values = tab.column_values()
    point = [ZERO] * n
    for c, (j, s) in enumerate(col_of):
        point[j] += s * values[c]
    point = tuple(point)
    value = -tab.obj[-1]

    # y_r = c_id - rbar_id on the starting identity columns; starting
    # columns all have zero phase two cost.
    y = [-tab.obj[identity[r]] for r in range(m)]
    y = [-v if negated[r] else v for r, v in enumerate(y)]
    dual = [ZERO] * (len(problem.ineqs) + len(problem.eqs))
    for idx, i in enumerate(kept):
        dual[i] = y[idx]
    offset = len(problem.ineqs)
    for k in range(len(problem.eqs)):
        dual[offset + k] = y[m_ineq + k]
    for j, ids in signs.items():
        # c_j - u.A_j = rbar_j <= 0, paid for by the first sign row.
        coeff = problem.ineqs[ids[0]][0][j]
        dual[ids[0]] = tab.obj[var_cols[j][0]] / coeff

    outcome = LPOutcome(LPStatus.OPTIMAL, value, point, tuple(dual))
    if __debug__:
        check_certificate(problem, outcome)
    return outcome


def lp_minimize(problem: LPProblem) -> LPOutcome:
    """
    Minimizes the objective of `problem`. The value is the minimum; the
    multipliers certify the negated maximization.
    """
    negated = LPProblem(
        problem.num_vars,
        [-c for c in problem.objective],
        problem.ineqs,
        problem.eqs,
    )
    outcome = lp_solve(negated)
    if not outcome.is_optimal:
        return outcome
    return outcome._replace(value=-outcome.value)


def check_certificate(problem: LPProblem, outcome: LPOutcome) -> None:
    """
    Verifies an OPTIMAL outcome exactly: primal feasibility, dual
    feasibility and equal objective values.
    """
    if not outcome.is_optimal:
        return
    x = outcome.point
    for i, (a, b) in enumerate(problem.ineqs):
        if dot(a, x) > b:
            raise InvariantViolation(f"inequality {i} violated by {x}")
    for k, (a, d) in enumerate(problem.eqs):
        if dot(a, x) != d:
            raise InvariantViolation(f"equality {k} violated by {x}")
    m = len(problem.ineqs)
    dual = outcome.dual
    if len(dual) != m + len(problem.eqs):
        raise InvariantViolation("dual vector has the wrong length")
    if any(u < 0 for u in dual[:m]):
        raise InvariantViolation(f"negative inequality multiplier {dual}")
    rows = [a for a, _ in problem.ineqs] + [a for a, _ in problem.eqs]
    active = [(u, a) for u, a in zip(dual, rows) if u]
    for j in range(problem.num_vars):
        lhs = sum((u * a[j] for u, a in active), ZERO)
        if lhs != problem.objective[j]:
            raise InvariantViolation(
                f"dual constraint {j}: {lhs} != {problem.objective[j]}"
            )
    rhs = [b for _, b in problem.ineqs] + [d for _, d in problem.eqs]
    dual_value = dot(dual, rhs)
    if dual_value != outcome.value or dot(problem.objective, x) != dual_value:
        raise InvariantViolation(
            f"duality gap: primal {outcome.value}, dual {dual_value}"
        )


def lp_feasible(ineqs=(), eqs=(), num_vars=None) -> Feasibility:
    rows = list(ineqs) + list(eqs)
    if num_vars is None:
        if not rows:
            raise LPInputError("cannot infer the dimension of an empty system")
        num_vars = len(rows[0][0])
    problem = LPProblem(num_vars, [ZERO] * num_vars, ineqs, eqs)
    outcome = lp_solve(problem)
    if outcome.is_optimal:
        return Feasibility(True, outcome.point)
    return Feasibility(False)


def solve_linear_system(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """Exact Gauss-Jordan elimination; None when the matrix is singular."""
    n = len(matrix)
    aug = [
        list(map(Fraction, row)) + [Fraction(b)]
        for row, b in zip(matrix, rhs)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [row[-1] for row in aug]
