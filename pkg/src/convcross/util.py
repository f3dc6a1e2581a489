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

import time

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from convcross.exceptions import ConvCrossInputError


Point = Tuple[Fraction, ...]

MASK64 = (1 << 64) - 1


def parse_rational(value, location=None) -> Fraction:
    """
    Parses an exact rational from its JSON form. Strings "p/q", "p" and
    finite decimals "0.25" are accepted, as are JSON integers. Floats
    are rejected since they cannot round-trip exactly.
    """
    if isinstance(value, bool):
        raise ConvCrossInputError(
            f"expected a rational string, got {value!r}", location
        )
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ConvCrossInputError(
            f"floating point value {value!r} is not exact; "
            "write it as a string such as \"3/2\"",
            location,
        )
    if not isinstance(value, str):
        raise ConvCrossInputError(
            f"expected a rational string, got {type(value).__name__}",
            location,
        )
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ConvCrossInputError(
            f"malformed rational {value!r}", location
        ) from None


def parse_point(values, location=None) -> Point:
    if not isinstance(values, (list, tuple)):
        raise ConvCrossInputError("expected a list of rationals", location)
    return tuple(
        parse_rational(v, f"{location}[{i}]" if location else f"[{i}]")
        for i, v in enumerate(values)
    )


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def format_point(point: Iterable[Fraction]) -> List[str]:
    return [format_rational(v) for v in point]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def combine(weights: Sequence[Fraction], points: Sequence[Point]) -> Point:
    """Returns sum_i weights[i] * points[i]."""
    dim = len(points[0])
    return tuple(
        sum((w * p[k] for w, p in zip(weights, points)), Fraction(0))
        for k in range(dim)
    )


class SplitMix64:
    """
    Seeded 64-bit generator (Steele, Lea and Flood's SplitMix64). The
    whole sampling layer draws from instances of this class so that a
    seed fully determines every report.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def fork(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randbelow requires n > 0")
        # Rejection keeps the draw unbiased.
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.randbelow(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randbelow(len(seq))]

    def rational(self, lo: int, hi: int, denominators=(1, 2, 4)) -> Fraction:
        q = self.choice(denominators)
        return Fraction(self.randint(lo * q, hi * q), q)

    def unit_rational(self, denominator=64) -> Fraction:
        """Uniform on the open grid {1/d, ..., (d-1)/d}."""
        return Fraction(self.randint(1, denominator - 1), denominator)

    def weights(self, k: int, spread=16) -> List[Fraction]:
        """k strictly positive rationals summing to 1."""
        raw = [self.randint(1, spread) for _ in range(k)]
        total = sum(raw)
        return [Fraction(r, total) for r in raw]


class Timer:
    def __init__(self):
        self.start = 0

    def begin(self):
        self.start = time.perf_counter()

    def elapsed_ms(self) -> int:
        return int((time.perf_counter() - self.start) * 1000)
