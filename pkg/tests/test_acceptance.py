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
Full-scale campaigns. Deselected by default; run with ``pytest -m slow``.
"""

import unittest

from fractions import Fraction

import pytest

from convcross.cross import CrossSpec, verify_prop24
from convcross.extremal import phi_dual, phi_gauge, verify_remark22
from convcross.generators import grid_point, random_extremal_problem
from convcross.ratlp import LPProblem, LPStatus, check_certificate, lp_solve
from convcross.reinhardt import (
    ReinhardtCross,
    cross_envelope_verify,
    log_box,
    polydisc,
)
from convcross.util import SplitMix64, Timer


F = Fraction


def random_lp(rng: SplitMix64) -> LPProblem:
    n = rng.randint(1, 4)
    ineqs = []
    for i in range(n):
        e = tuple(F(1) if k == i else F(0) for k in range(n))
        ineqs.append((e, F(10)))
        ineqs.append((tuple(-v for v in e), F(10)))
    for _ in range(rng.randint(1, 8)):
        a = tuple(F(rng.randint(-6, 6)) for _ in range(n))
        ineqs.append((a, F(rng.randint(-12, 12))))
    objective = [F(rng.randint(-6, 6)) for _ in range(n)]
    return LPProblem(n, objective, ineqs)


def random_reinhardt_cross(rng: SplitMix64) -> ReinhardtCross:
    blocks = []
    for _ in range(2):
        n = rng.randint(1, 2)
        radii = [rng.randint(-2, 1) for _ in range(n)]
        inner = [r - rng.randint(1, 3) for r in radii]
        blocks.append((log_box([None] * n, inner), polydisc(radii)))
    return ReinhardtCross(blocks)


@pytest.mark.slow
class AcceptanceTest(unittest.TestCase):
    def test_lp_certificates(self):
        rng = SplitMix64(1)
        timer = Timer()
        timer.begin()
        for _ in range(500):
            problem = random_lp(rng)
            outcome = lp_solve(problem)
            self.assertIn(
                outcome.status, (LPStatus.OPTIMAL, LPStatus.INFEASIBLE)
            )
            check_certificate(problem, outcome)
        self.assertLess(timer.elapsed_ms(), 30_000)

    def test_phi_formulations(self):
        rng = SplitMix64(2)
        timer = Timer()
        timer.begin()
        for i in range(100):
            dim = 1 + i % 3
            prob = random_extremal_problem(rng, dim, with_rays=i % 2 == 1)
            for _ in range(10):
                x = grid_point(rng, prob)
                value, _ = phi_dual(prob, x)
                self.assertEqual(value, phi_gauge(prob, x))
        self.assertLess(timer.elapsed_ms(), 60_000)

    def test_property_suite(self):
        rng = SplitMix64(3)
        for i in range(50):
            dim = 1 + i % 3
            prob = random_extremal_problem(rng, dim, with_rays=i % 4 == 0)
            points = [grid_point(rng, prob) for _ in range(5)]
            mu = rng.unit_rational(8)
            report = verify_remark22(prob, mu, points)
            self.assertTrue(report.passed, report.violations())

    def test_cross_campaigns(self):
        rng = SplitMix64(4)
        timer = Timer()
        timer.begin()
        additive_specs = additive_samples = 0
        for i in range(20):
            dims = [rng.randint(1, 2) for _ in range(2 + i % 2)]
            spec = CrossSpec.random(rng, dims)
            report = verify_prop24(spec, 1000, seed=i)
            self.assertTrue(report.passed, report.violations[:3])
            if report.additivity_checked:
                additive_specs += 1
                additive_samples += report.additivity_checked
        self.assertGreaterEqual(additive_specs, 10)
        self.assertGreaterEqual(additive_samples, 200)
        self.assertLess(timer.elapsed_ms(), 300_000)

    def test_reinhardt_crosses(self):
        rng = SplitMix64(5)
        for i in range(5):
            cross = random_reinhardt_cross(rng)
            report = cross_envelope_verify(cross, 500, seed=i)
            self.assertTrue(report.passed, report.to_json()["violations"][:3])
            self.assertGreater(report.hstar_checked, 0)


def main():
    unittest.main()


if __name__ == "__main__":
    main()
