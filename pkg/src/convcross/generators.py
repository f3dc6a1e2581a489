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
Seeded random instances and verification samples. Every draw comes
from a `SplitMix64` stream, so a seed reproduces a campaign exactly.

Instances: U is a random box or corner simplex with coordinates on the
grid {-8, ..., 8} / {1, 2, 4}; S is U shrunk towards a random interior
point by a factor in [1/8, 1/2], so S lies in the interior of U.

Campaign samples: 50% grid points of U_1 x ... x U_N, 25% points of the
cross (barycenter perturbations inside conv S_k) and 25% points aimed
at the boundary sum(Phi) = 1 through sublevel generators.
"""

import logging

from fractions import Fraction
from typing import List, Sequence, Tuple

from convcross.exceptions import DomainError
from convcross.extremal import ExtremalProblem, phi, sublevel_vdata
from convcross.polytope import Cell, HPolytope, VData, extreme_points
from convcross.util import Point, SplitMix64, combine, dot


logger = logging.getLogger(__name__)

GRID_DENOMINATOR = 32
GRID_TRIES = 16


def random_u_cell(rng: SplitMix64, dim: int, with_rays=False) -> Cell:
    if rng.randbelow(2) == 0:
        lower, upper = [], []
        for _ in range(dim):
            lo = rng.rational(-8, 7)
            hi = lo + Fraction(rng.randint(1, 8), rng.choice((1, 2, 4)))
            lower.append(lo)
            upper.append(min(hi, Fraction(8)))
        poly = HPolytope.box(lower, upper)
    else:
        # lo + conv{0, w_i e_i}
        lo = [rng.rational(-8, 4) for _ in range(dim)]
        widths = [
            Fraction(rng.randint(1, 8), rng.choice((1, 2))) for _ in range(dim)
        ]
        rows = []
        for i in range(dim):
            e = tuple(-1 if k == i else 0 for k in range(dim))
            rows.append((e, -lo[i]))
        a = tuple(1 / w for w in widths)
        rows.append((a, 1 + dot(a, lo)))
        poly = HPolytope(dim, rows)
    ext = ()
    if with_rays:
        ext = [j for j in range(dim) if rng.randbelow(2)]
        ext = ext or [rng.randbelow(dim)]
    return Cell(poly, ext)


def interior_point(rng: SplitMix64, vdata: VData) -> Point:
    """A positive convex combination of all vertices, pushed down rays."""
    weights = rng.weights(len(vdata.vertices))
    p = list(combine(weights, vdata.vertices))
    for j in vdata.rays:
        p[j] -= rng.randint(0, 4)
    return tuple(p)


def random_extremal_cells(rng: SplitMix64, dim: int, with_rays=False):
    U = random_u_cell(rng, dim, with_rays)
    center = interior_point(rng, VData(U.poly.vertex_list, (), dim))
    factor = Fraction(rng.randint(2, 8), 16)
    S = Cell(U.poly.scaled(factor, center), U.ext)
    return [S], U


def random_extremal_problem(
    rng: SplitMix64, dim: int, with_rays=False
) -> ExtremalProblem:
    S, U = random_extremal_cells(rng, dim, with_rays)
    return ExtremalProblem(S, U)


def grid_point(rng: SplitMix64, prob: ExtremalProblem) -> Point:
    """
    Uniform point of the 1/32 grid over the bounding box of U; rays
    double the box downwards. Falls back to `interior_point`.
    """
    verts = prob.U_vdata.vertices
    box = []
    for k in range(prob.dim):
        lo = min(v[k] for v in verts)
        hi = max(v[k] for v in verts)
        if k in prob.ext:
            lo -= (hi - lo) or 1
        box.append((lo, hi))
    for _ in range(GRID_TRIES):
        p = tuple(
            lo
            + (hi - lo)
            * Fraction(rng.randint(0, GRID_DENOMINATOR), GRID_DENOMINATOR)
            for lo, hi in box
        )
        if prob.is_interior(p):
            return p
    return interior_point(rng, prob.U_vdata)


class CrossSampler:
    GRID = "grid"
    CROSS = "cross"
    BOUNDARY = "boundary"

    def __init__(self, problems: Sequence[ExtremalProblem], rng: SplitMix64):
        self.problems = list(problems)
        self.rng = rng
        self._s_hulls = [extreme_points(p.S_vdata) for p in self.problems]

    def sample(self) -> Tuple[str, Point]:
        r = self.rng.randbelow(4)
        if r < 2:
            return self.GRID, self._grid()
        if r == 2:
            return self.CROSS, self._cross()
        point = self._boundary()
        if point is None:
            return self.CROSS, self._cross()
        return self.BOUNDARY, point

    def _join(self, blocks: List[Point]) -> Point:
        return tuple(v for block in blocks for v in block)

    def _grid(self) -> Point:
        return self._join([grid_point(self.rng, p) for p in self.problems])

    def _s_point(self, k) -> Point:
        return interior_point(self.rng, self._s_hulls[k])

    def _cross(self) -> Point:
        j = self.rng.randbelow(len(self.problems))
        blocks = [
            grid_point(self.rng, p) if k == j else self._s_point(k)
            for k, p in enumerate(self.problems)
        ]
        return self._join(blocks)

    def _boundary(self):
        """
        Fixes every block but j with partial sum s in (0, 1) and puts
        block j on the boundary of {Phi_j <= 1 - s} by maximizing a
        random linear form over the sublevel generators.
        """
        j = self.rng.randbelow(len(self.problems))
        for _ in range(GRID_TRIES):
            blocks, partial = [], Fraction(0)
            for k, prob in enumerate(self.problems):
                if k == j:
                    blocks.append(None)
                    continue
                if self.rng.randbelow(2):
                    block = grid_point(self.rng, prob)
                else:
                    block = self._s_point(k)
                blocks.append(block)
                try:
                    partial += phi(prob, block)
                except DomainError:
                    partial = Fraction(1)
            if 0 < partial < 1:
                break
        else:
            return None
        prob = self.problems[j]
        gens = sublevel_vdata(prob, 1 - partial)
        # Positive weight along rays keeps the maximum finite.
        c = []
        for k in range(prob.dim):
            lo = 1 if k in prob.ext else -4
            c.append(Fraction(self.rng.randint(lo, 4)))
        if not any(c):
            c[0] = Fraction(1)
        blocks[j] = max(gens.vertices, key=lambda g: dot(c, g))
        return self._join(blocks)
