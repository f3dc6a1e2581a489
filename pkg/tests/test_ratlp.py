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

import unittest

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from convcross.exceptions import InvariantViolation, LPInputError
from convcross.ratlp import (
    LPProblem,
    LPStatus,
    check_certificate,
    lp_feasible,
    lp_minimize,
    lp_solve,
    solve_linear_system,
)


F = Fraction


def box_rows(n, bound=10):
    rows = []
    for i in range(n):
        e = tuple(F(1) if k == i else F(0) for k in range(n))
        rows.append((e, F(bound)))
        rows.append((tuple(-v for v in e), F(bound)))
    return rows


class LPSolveTest(unittest.TestCase):
    def test_simple_optimum_and_duals(self):
        problem = LPProblem(
            2,
            [1, 1],
            [((1, 0), 1), ((0, 1), 2), ((-1, 0), 0), ((0, -1), 0)],
        )
        outcome = lp_solve(problem)
        self.assertIs(outcome.status, LPStatus.OPTIMAL)
        self.assertEqual(outcome.value, 3)
        self.assertEqual(outcome.point, (1, 2))
        self.assertEqual(outcome.dual, (1, 1, 0, 0))

    def test_infeasible(self):
        problem = LPProblem(1, [1], [((1,), 0), ((-1,), -1)])
        self.assertIs(lp_solve(problem).status, LPStatus.INFEASIBLE)

    def test_unbounded(self):
        problem = LPProblem(1, [1], [((-1,), 0)])
        self.assertIs(lp_solve(problem).status, LPStatus.UNBOUNDED)

    def test_equality_rows(self):
        problem = LPProblem(2, [1, 0], [((0, -1), 0)], [((1, 1), 1)])
        outcome = lp_solve(problem)
        self.assertEqual(outcome.value, 1)
        self.assertEqual(outcome.point, (1, 0))

    def test_free_variables(self):
        # x free, maximize -x subject to x >= -5
        problem = LPProblem(1, [-1], [((-1,), 5)])
        outcome = lp_solve(problem)
        self.assertEqual(outcome.value, 5)
        self.assertEqual(outcome.point, (-5,))

    def test_degenerate_cycling_example(self):
        # Beale's example cycles under the textbook pivoting rule.
        problem = LPProblem(
            4,
            [F(3, 4), -20, F(1, 2), -6],
            [
                ((F(1, 4), -8, -1, 9), 0),
                ((F(1, 2), -12, F(-1, 2), 3), 0),
                ((0, 0, 1, 0), 1),
                ((-1, 0, 0, 0), 0),
                ((0, -1, 0, 0), 0),
                ((0, 0, -1, 0), 0),
                ((0, 0, 0, -1), 0),
            ],
        )
        outcome = lp_solve(problem)
        self.assertIs(outcome.status, LPStatus.OPTIMAL)
        self.assertEqual(outcome.value, F(5, 4))

    def test_minimize(self):
        problem = LPProblem(2, [1, 1], [((-1, 0), -1), ((0, -1), -2)])
        outcome = lp_minimize(problem)
        self.assertEqual(outcome.value, 3)
        self.assertEqual(outcome.point, (1, 2))

    def test_feasible(self):
        self.assertTrue(lp_feasible([((1, 1), 1), ((-1, 0), 0), ((0, -1), 0)]))
        self.assertFalse(lp_feasible([((1,), -1), ((-1,), 0)]))

    def test_input_validation(self):
        with self.assertRaises(LPInputError):
            LPProblem(2, [1, 0], [((1,), 0)])
        with self.assertRaises(LPInputError):
            LPProblem(2, [1])

    def test_tampered_certificate(self):
        problem = LPProblem(1, [1], [((1,), 2)])
        outcome = lp_solve(problem)
        with self.assertRaises(InvariantViolation):
            check_certificate(problem, outcome._replace(value=F(3)))
        with self.assertRaises(InvariantViolation):
            check_certificate(problem, outcome._replace(dual=(F(2),)))

    @settings(max_examples=60)
    @given(
        st.integers(1, 4),
        st.lists(
            st.lists(st.integers(-6, 6), min_size=6, max_size=6),
            min_size=1,
            max_size=8,
        ),
        st.lists(st.integers(-6, 6), min_size=4, max_size=4),
        st.lists(st.integers(-12, 12), min_size=8, max_size=8),
    )
    def test_random_certificates(self, n, raw_rows, objective, rhs):
        ineqs = box_rows(n)
        for row, b in zip(raw_rows, rhs):
            ineqs.append((tuple(F(v) for v in row[:n]), F(b)))
        problem = LPProblem(n, [F(v) for v in objective[:n]], ineqs)
        outcome = lp_solve(problem)
        self.assertIn(outcome.status, (LPStatus.OPTIMAL, LPStatus.INFEASIBLE))
        check_certificate(problem, outcome)

    @settings(max_examples=40)
    @given(
        st.integers(1, 3),
        st.lists(
            st.lists(st.integers(-6, 6), min_size=4, max_size=4),
            min_size=1,
            max_size=6,
        ),
        st.lists(st.integers(-6, 6), min_size=3, max_size=3),
        st.data(),
    )
    def test_row_order_invariance(self, n, raw_rows, objective, data):
        ineqs = box_rows(n)
        for row in raw_rows:
            ineqs.append((tuple(F(v) for v in row[:n]), F(2 * row[3])))
        order = data.draw(st.permutations(range(len(ineqs))))
        c = [F(v) for v in objective[:n]]
        outcome = lp_solve(LPProblem(n, c, ineqs))
        shuffled = lp_solve(LPProblem(n, c, [ineqs[i] for i in order]))
        self.assertIs(shuffled.status, outcome.status)
        self.assertEqual(shuffled.value, outcome.value)


class LinearSystemTest(unittest.TestCase):
    def test_solution(self):
        x = solve_linear_system([[2, 1], [1, 3]], [3, 5])
        self.assertEqual(x, [F(4, 5), F(7, 5)])

    def test_singular(self):
        self.assertIsNone(solve_linear_system([[1, 2], [2, 4]], [1, 2]))


def main():
    unittest.main()


if __name__ == "__main__":
    main()
