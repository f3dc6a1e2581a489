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

from convcross.cross import WClass, conv_cross_classify, w_value
from convcross.exceptions import (
    ConvCrossInputError,
    DomainError,
    UnsupportedError,
)
from convcross.polytope import Cell, HPolytope, hull_membership
from convcross.reinhardt import (
    NEG_INF,
    Convexity,
    DohStatus,
    LogPoint,
    ReinhardtCross,
    ReinhardtDomain,
    _arrangement_witness,
    _in_union,
    contains_point,
    cross_contains,
    cross_envelope_verify,
    envelope,
    h_star,
    h_value,
    hartogs_figure,
    is_doh,
    is_log_convex,
    log_box,
    log_point,
    modulus_point,
    polydisc,
)


F = Fraction


def boxes(n, *bounds, flags=None):
    cells = [Cell(HPolytope.box(lo, hi)) for lo, hi in bounds]
    return ReinhardtDomain(n, cells, flags or [False] * n)


def lshape():
    return boxes(2, ([-2, -2], [0, -1]), ([-2, -2], [-1, 0]))


def disc_pair():
    return log_box([None], [-1]), polydisc([0])


class LogPointTest(unittest.TestCase):
    def test_exact_moduli(self):
        p = log_point([0, 1])
        self.assertEqual(p.coords, (NEG_INF, 0))
        self.assertTrue(p.exact)
        self.assertEqual(p.axes, frozenset([0]))
        self.assertFalse(p.finite)
        self.assertEqual(p.to_json(), ["-inf", "0"])

    def test_inexact_moduli(self):
        p = log_point(["0.5"])
        self.assertFalse(p.exact)
        self.assertAlmostEqual(float(p.coords[0]), -0.6931471805599453)

    def test_rejects_bad_moduli(self):
        for bad in (["-1"], ["abc"], ["Infinity"]):
            with self.assertRaises(ConvCrossInputError):
                log_point(bad)

    def test_modulus_point(self):
        (m,) = modulus_point(LogPoint((F(-1),)))
        self.assertTrue(str(m).startswith("0.367879441171442"))
        self.assertEqual(modulus_point(LogPoint((NEG_INF, F(0)))), (0, 1))


class ContainsTest(unittest.TestCase):
    def test_bidisc(self):
        dom = polydisc([0, 0])
        self.assertTrue(contains_point(dom, (NEG_INF, F(-1, 2))))
        self.assertTrue(contains_point(dom, (NEG_INF, NEG_INF)))
        self.assertFalse(contains_point(dom, (F(1, 2), NEG_INF)))

    def test_hartogs(self):
        dom = hartogs_figure(-1, -2, truncation=3)
        self.assertFalse(contains_point(dom, (F(-1, 2), NEG_INF)))
        self.assertTrue(contains_point(dom, (F(-5, 2), NEG_INF)))
        self.assertTrue(contains_point(dom, (NEG_INF, F(-1, 2))))
        self.assertTrue(contains_point(dom, (F(-1, 2), F(-1, 2))))
        self.assertFalse(contains_point(dom, (F(-1, 2), F(-3, 2))))

    def test_axis_flag(self):
        dom = ReinhardtDomain(
            1, [Cell(HPolytope.box([-4], [0]), [0])], [False]
        )
        self.assertFalse(contains_point(dom, (NEG_INF,)))
        self.assertTrue(contains_point(dom, (-9,)))

    def test_flag_needs_receding_cell(self):
        with self.assertRaises(ConvCrossInputError):
            ReinhardtDomain(1, [Cell(HPolytope.box([-4], [0]))], [True])


class LogConvexTest(unittest.TestCase):
    def test_single_cell(self):
        self.assertIs(
            is_log_convex(polydisc([0, 0])).status, Convexity.TRUE
        )

    def test_lshape(self):
        result = is_log_convex(lshape())
        self.assertIs(result.status, Convexity.FALSE)
        self.assertEqual(result.witness, (F(-1, 2), F(-1, 2)))
        self.assertEqual(result.to_json()["witness"], ["-1/2", "-1/2"])

    def test_split_rectangle(self):
        dom = boxes(2, ([0, 0], [1, 1]), ([1, 0], [2, 1]))
        self.assertIs(is_log_convex(dom).status, Convexity.TRUE)

    def test_arrangement(self):
        dom = lshape()
        pt = _arrangement_witness(dom)
        self.assertIsNotNone(pt)
        self.assertFalse(_in_union(dom, pt))
        self.assertTrue(hull_membership(dom.hull, pt))
        self.assertIsNone(
            _arrangement_witness(boxes(2, ([0, 0], [1, 1]), ([1, 0], [2, 1])))
        )

    def test_intervals(self):
        gap = boxes(1, ([-3], [-2]), ([-1], [0]))
        result = is_log_convex(gap)
        self.assertIs(result.status, Convexity.FALSE)
        self.assertEqual(result.witness, (F(-3, 2),))
        joined = ReinhardtDomain(
            1,
            [
                Cell(HPolytope.box([-3], [-1]), [0]),
                Cell(HPolytope.box([-2], [0])),
            ],
            [True],
        )
        self.assertIs(is_log_convex(joined).status, Convexity.TRUE)

    def test_three_dimensions(self):
        slab = boxes(3, ([0, 0, 0], [1, 1, 1]), ([1, 0, 0], [2, 1, 1]))
        result = is_log_convex(slab, samples=20)
        self.assertIs(result.status, Convexity.UNFALSIFIED)
        self.assertEqual(result.samples, 20)
        corner = boxes(3, ([0, 0, 0], [1, 1, 1]), ([1, 1, 1], [2, 2, 2]))
        result = is_log_convex(corner, samples=20)
        self.assertIs(result.status, Convexity.FALSE)
        self.assertFalse(_in_union(corner, result.witness))


class DohTest(unittest.TestCase):
    def test_bidisc(self):
        self.assertTrue(is_doh(polydisc([0, 0])).is_doh)

    def test_lshape(self):
        cert = is_doh(lshape())
        self.assertIs(cert.status, DohStatus.NOT_DOH)
        self.assertEqual(cert.to_json()["failed"], ["log_convexity"])

    def test_axis_mismatch(self):
        dom = ReinhardtDomain(
            2, [Cell(HPolytope.box([-64, -1], [0, 0]), [0])], [False, False]
        )
        cert = is_doh(dom)
        self.assertIs(cert.status, DohStatus.NOT_DOH)
        self.assertEqual(cert.axis_failures, [0])
        self.assertEqual(cert.to_json()["axis_failures"], [1])

    def test_inconclusive(self):
        slab = boxes(3, ([0, 0, 0], [1, 1, 1]), ([1, 0, 0], [2, 1, 1]))
        self.assertIs(is_doh(slab, samples=10).status, DohStatus.INCONCLUSIVE)


class EnvelopeTest(unittest.TestCase):
    def test_lshape(self):
        result = envelope(lshape())
        self.assertEqual(len(result.hull.vertices), 5)
        self.assertIn(((F(1), F(1)), F(-1)), result.hrep.rows)
        self.assertTrue(result.certificate.is_doh)
        again = envelope(result.as_domain())
        self.assertTrue(again.hull.same_generators(result.hull))

    def test_hartogs(self):
        result = envelope(hartogs_figure(-1, -2, truncation=3))
        self.assertEqual(result.hull.vertices, ((0, 0),))
        self.assertEqual(result.hull.rays, (0, 1))
        doc = result.to_json()
        self.assertEqual(doc["vertices"], [["0", "0"]])
        self.assertEqual(doc["rays"], [1, 2])
        self.assertEqual(doc["certificate"]["status"], "doh")
        self.assertTrue(
            contains_point(result.as_domain(), (F(-1, 2), NEG_INF))
        )


class HStarTest(unittest.TestCase):
    def test_disc(self):
        A, D = disc_pair()
        self.assertEqual(h_star(A, D, (F(-1, 2),)), F(1, 2))
        self.assertEqual(h_star(A, D, (-2,)), 0)

    def test_bidisc(self):
        A, D = polydisc([-1, -1]), polydisc([0, 0])
        self.assertEqual(h_star(A, D, (F(-1, 2), F(-3, 2))), F(1, 2))

    def test_axis_point(self):
        A, D = disc_pair()
        with self.assertRaises(UnsupportedError):
            h_star(A, D, (NEG_INF,))

    def test_inexact_point(self):
        A, D = disc_pair()
        p = log_point(["0.5"])
        with self.assertRaises(UnsupportedError):
            h_star(A, D, p)
        value = h_star(A, D, p, accept_inexact=True)
        self.assertAlmostEqual(float(value), 0.3068528194400547)

    def test_boundary(self):
        A, D = disc_pair()
        with self.assertRaises(DomainError):
            h_star(A, D, (0,))

    def test_bad_pairs(self):
        A = log_box([-2, -2], [F(-3, 2), F(-3, 2)])
        with self.assertRaises(ConvCrossInputError):
            h_star(A, lshape(), (F(-7, 4), F(-7, 4)))
        with self.assertRaises(ConvCrossInputError):
            h_star(polydisc([1]), polydisc([0]), (F(-1, 2),))


class ReinhardtCrossTest(unittest.TestCase):
    def setUp(self):
        self.cross = ReinhardtCross([disc_pair(), disc_pair()])

    def test_log_spec(self):
        spec = self.cross.log_spec
        inside = conv_cross_classify(spec, (F(-1, 2), F(-3, 4)))
        self.assertEqual(inside.phi_sum, F(3, 4))
        self.assertIs(inside.w_class, WClass.INSIDE)
        outside = conv_cross_classify(spec, (F(-1, 8), F(-1, 4)))
        self.assertEqual(outside.phi_sum, F(13, 8))
        self.assertIs(outside.w_class, WClass.OUTSIDE)
        self.assertFalse(outside.hull_member)

    def test_contains(self):
        self.assertTrue(cross_contains(self.cross, (NEG_INF, -2)))
        self.assertTrue(cross_contains(self.cross, (F(-1, 2), NEG_INF)))
        self.assertFalse(cross_contains(self.cross, (F(-1, 2), F(-1, 2))))

    def test_verify(self):
        report = cross_envelope_verify(self.cross, 30, seed=0)
        self.assertTrue(report.passed, report.to_json()["violations"])
        self.assertEqual(len(report.axis_checks), 2)
        self.assertTrue(all(c["member"] for c in report.axis_checks))
        self.assertGreater(report.hstar_checked, 0)

    def test_h_value_matches_h_star(self):
        spec = self.cross.log_spec
        for p in [(F(-1, 2), F(-3, 4)), (F(-1, 8), F(-1, 4)), (-3, F(-1, 2))]:
            parts = self.cross.split(p)
            values = [h_value(self.cross, j, q) for j, q in enumerate(parts)]
            self.assertEqual(sum(values), w_value(spec, p))
            for (A, D), q, value in zip(self.cross.blocks, parts, values):
                self.assertEqual(value, h_star(A, D, q))

    def test_needs_two_blocks(self):
        with self.assertRaises(ConvCrossInputError):
            ReinhardtCross([disc_pair()])


def main():
    unittest.main()


if __name__ == "__main__":
    main()
