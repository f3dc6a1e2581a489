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

from convcross.exceptions import ConvCrossInputError
from convcross.util import (
    SplitMix64,
    combine,
    format_point,
    parse_point,
    parse_rational,
)


class ParseRationalTest(unittest.TestCase):
    def test_accepted_forms(self):
        self.assertEqual(parse_rational("3/2"), Fraction(3, 2))
        self.assertEqual(parse_rational("-7"), Fraction(-7))
        self.assertEqual(parse_rational("0.25"), Fraction(1, 4))
        self.assertEqual(parse_rational(4), Fraction(4))

    def test_rejects_floats_and_bools(self):
        with self.assertRaises(ConvCrossInputError):
            parse_rational(0.5)
        with self.assertRaises(ConvCrossInputError):
            parse_rational(True)

    def test_malformed_reports_location(self):
        with self.assertRaises(ConvCrossInputError) as ctx:
            parse_rational("1/0", "rows[2].b")
        self.assertIn("rows[2].b", str(ctx.exception))
        self.assertEqual(ctx.exception.location, "rows[2].b")

    def test_point_location(self):
        with self.assertRaises(ConvCrossInputError) as ctx:
            parse_point(["1", "x"], "points[3]")
        self.assertIn("points[3][1]", str(ctx.exception))

    def test_format(self):
        self.assertEqual(
            format_point((Fraction(1, 2), Fraction(-3))), ["1/2", "-3"]
        )


class SplitMix64Test(unittest.TestCase):
    def test_reference_value(self):
        self.assertEqual(SplitMix64(0).next_u64(), 0xE220A8397B1DCDAF)

    def test_seed_determines_stream(self):
        a, b = SplitMix64(7), SplitMix64(7)
        self.assertEqual(
            [a.next_u64() for _ in range(5)], [b.next_u64() for _ in range(5)]
        )
        self.assertNotEqual(SplitMix64(8).next_u64(), SplitMix64(7).next_u64())

    def test_ranges(self):
        rng = SplitMix64(1)
        for _ in range(200):
            self.assertIn(rng.randbelow(3), (0, 1, 2))
            self.assertTrue(-2 <= rng.randint(-2, 2) <= 2)
            q = rng.unit_rational()
            self.assertTrue(0 < q < 1)

    def test_weights(self):
        rng = SplitMix64(3)
        for k in (1, 2, 5):
            w = rng.weights(k)
            self.assertEqual(len(w), k)
            self.assertEqual(sum(w), 1)
            self.assertTrue(all(v > 0 for v in w))

    def test_combine(self):
        half = Fraction(1, 2)
        p = combine([half, half], [(0, 2), (2, 0)])
        self.assertEqual(p, (1, 1))


def main():
    unittest.main()


if __name__ == "__main__":
    main()
