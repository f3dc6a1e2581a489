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
Polyhedral primitives in log-space.

A `Cell` denotes ``poly + cone{-e_j : j in ext}`` for a bounded,
full-dimensional `HPolytope`; a `VData` denotes
``conv(vertices) + cone{-e_j : j in rays}``. Indices are 0-based here
and 1-based in JSON. All decisions are exact and go through `ratlp`.
"""

import itertools
import logging

from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from sortedcontainers import SortedSet

from convcross.exceptions import (
    ConvCrossInputError,
    GeometryError,
    UnsupportedError,
)
from convcross.ratlp import (
    LPProblem,
    LPStatus,
    lp_feasible,
    lp_solve,
    solve_linear_system,
)
from convcross.util import Point, dot


logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

Halfspace = Tuple[Point, Fraction]

MAX_FACET_DIM = 3


def _unit(dim, i, sign=ONE) -> Point:
    return tuple(sign if k == i else ZERO for k in range(dim))


def _check_dim(dim, x, what="point"):
    if len(x) != dim:
        raise ConvCrossInputError(
            f"{what} has dimension {len(x)}, expected {dim}"
        )


class HPolytope:
    """
    Bounded, full-dimensional polytope ``{x : a . x <= b}``. Both
    properties are verified by LP when the object is built.
    """

    def __init__(self, dim: int, rows: Iterable[Tuple[Sequence, object]]):
        if dim < 1:
            raise GeometryError(f"invalid dimension {dim}")
        self.dim = dim
        checked = []
        for i, (a, b) in enumerate(rows):
            if len(a) != dim:
                raise GeometryError(
                    f"row {i} has {len(a)} coefficients, expected {dim}"
                )
            checked.append((tuple(Fraction(v) for v in a), Fraction(b)))
        self.rows: Tuple[Halfspace, ...] = tuple(checked)
        self._validate()

    def _validate(self):
        for i in range(self.dim):
            for sign in (ONE, -ONE):
                outcome = lp_solve(
                    LPProblem(self.dim, _unit(self.dim, i, sign), self.rows)
                )
                if outcome.status is LPStatus.INFEASIBLE:
                    raise GeometryError("polytope is empty")
                if outcome.status is LPStatus.UNBOUNDED:
                    raise GeometryError(
                        f"polytope is unbounded along "
                        f"{'+' if sign > 0 else '-'}e_{i + 1}"
                    )
        # Strict feasibility: maximize s with a.x + s <= b, s <= 1.
        ineqs = []
        for a, b in self.rows:
            if any(a):
                ineqs.append((a + (ONE,), b))
            elif b < 0:
                raise GeometryError("polytope is empty")
        ineqs.append((_unit(self.dim + 1, self.dim), ONE))
        outcome = lp_solve(
            LPProblem(self.dim + 1, _unit(self.dim + 1, self.dim), ineqs)
        )
        if outcome.value <= 0:
            raise GeometryError("polytope is not full-dimensional")
        self.interior_point: Point = outcome.point[: self.dim]

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "HPolytope":
        dim = len(lower)
        rows = []
        for i in range(dim):
            rows.append((_unit(dim, i), upper[i]))
            rows.append((_unit(dim, i, -ONE), -Fraction(lower[i])))
        return cls(dim, rows)

    def scaled(self, t: Fraction, center: Point) -> "HPolytope":
        """The image of the polytope under x -> center + t (x - center)."""
        return HPolytope(
            self.dim,
            [(a, t * b + (1 - t) * dot(a, center)) for a, b in self.rows],
        )

    def satisfies(self, x: Point) -> bool:
        return all(dot(a, x) <= b for a, b in self.rows)

    def strictly_satisfies(self, x: Point) -> bool:
        return all(dot(a, x) < b for a, b in self.rows if any(a))

    @cached_property
    def vertex_list(self) -> Tuple[Point, ...]:
        found = SortedSet()
        for combo in itertools.combinations(self.rows, self.dim):
            x = solve_linear_system(
                [a for a, _ in combo], [b for _, b in combo]
            )
            if x is not None:
                x = tuple(x)
                if self.satisfies(x):
                    found.add(x)
        return tuple(found)

    def __eq__(self, other):
        return (
            isinstance(other, HPolytope)
            and self.dim == other.dim
            and set(self.rows) == set(other.rows)
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.rows)))

    def __repr__(self):
        return f"HPolytope(dim={self.dim}, rows={len(self.rows)})"


class VData:
    """``conv(vertices) + cone{-e_j : j in rays}``."""

    def __init__(self, vertices: Iterable[Sequence], rays=(), dim=None):
        verts = SortedSet(tuple(Fraction(v) for v in p) for p in vertices)
        if dim is None:
            if not verts:
                raise ConvCrossInputError("empty vertex list")
            dim = len(verts[0])
        for p in verts:
            _check_dim(dim, p, "vertex")
        rays = SortedSet(rays)
        if any(j < 0 or j >= dim for j in rays):
            raise ConvCrossInputError(
                f"ray index out of range in {list(rays)}"
            )
        self.dim = dim
        self.vertices: Tuple[Point, ...] = tuple(verts)
        self.rays: Tuple[int, ...] = tuple(rays)

    def same_generators(self, other: "VData") -> bool:
        return (
            self.dim == other.dim
            and self.vertices == other.vertices
            and self.rays == other.rays
        )

    def __repr__(self):
        return (
            f"VData(dim={self.dim}, vertices={len(self.vertices)}, "
            f"rays={[j + 1 for j in self.rays]})"
        )


class Cell:
    """A bounded polytope extended along the axis rays -e_j, j in ext."""

    def __init__(self, poly: HPolytope, ext: Iterable[int] = ()):
        ext = frozenset(ext)
        if any(j < 0 or j >= poly.dim for j in ext):
            raise ConvCrossInputError(
                f"ext index out of range in {sorted(ext)}"
            )
        self.poly = poly
        self.ext = ext

    @property
    def dim(self) -> int:
        return self.poly.dim

    @cached_property
    def vdata(self) -> VData:
        return VData(self.poly.vertex_list, self.ext, self.poly.dim)

    @cached_property
    def barycenter(self) -> Point:
        return barycenter(self.poly.vertex_list)

    def __repr__(self):
        return f"Cell({self.poly!r}, ext={sorted(j + 1 for j in self.ext)})"


def barycenter(points: Sequence[Point]) -> Point:
    k = len(points)
    return tuple(
        sum((p[i] for p in points), ZERO) / k for i in range(len(points[0]))
    )


def vertices(poly: HPolytope) -> VData:
    return VData(poly.vertex_list, (), poly.dim)


def cell_vdata(cell: Cell) -> VData:
    return cell.vdata


def contains(cell: Cell, x: Sequence) -> bool:
    """x in poly + cone{-e_j : j in ext}, decided exactly."""
    _check_dim(cell.dim, x)
    x = tuple(Fraction(v) for v in x)
    if cell.poly.satisfies(x):
        return True
    if not cell.ext:
        return False
    # x = y - sum s_j e_j  <=>  y = x + sum s_j e_j in poly, s >= 0.
    ext = sorted(cell.ext)
    k = len(ext)
    ineqs = [
        (tuple(a[j] for j in ext), b - dot(a, x)) for a, b in cell.poly.rows
    ]
    ineqs += [(_unit(k, i, -ONE), ZERO) for i in range(k)]
    return bool(lp_feasible(ineqs, num_vars=k))


def cell_is_interior(cell: Cell, x: Sequence) -> bool:
    """
    x in int(poly + cone) = int(poly) + cone: maximize the common slack
    sigma <= 1 of ``a . (x + sum s_j e_j) + sigma <= b`` over s >= 0.
    """
    _check_dim(cell.dim, x)
    x = tuple(Fraction(v) for v in x)
    if not cell.ext:
        return cell.poly.strictly_satisfies(x)
    ext = sorted(cell.ext)
    k = len(ext)
    ineqs = [
        (tuple(a[j] for j in ext) + (ONE,), b - dot(a, x))
        for a, b in cell.poly.rows
        if any(a)
    ]
    ineqs += [(_unit(k + 1, i, -ONE), ZERO) for i in range(k)]
    ineqs.append((_unit(k + 1, k), ONE))
    outcome = lp_solve(LPProblem(k + 1, _unit(k + 1, k), ineqs))
    return outcome.is_optimal and outcome.value > 0


def _combination_lp(vdata: VData, x: Point, extra_direction=None):
    """
    Rows for ``x + t d = sum l_i v_i - sum r_j e_j``, l, r >= 0,
    sum l = 1. The variable t exists only with `extra_direction`.
    """
    nv, nr = len(vdata.vertices), len(vdata.rays)
    nvars = nv + nr + (1 if extra_direction is not None else 0)
    eqs = []
    for k in range(vdata.dim):
        a = [v[k] for v in vdata.vertices]
        a += [-ONE if j == k else ZERO for j in vdata.rays]
        if extra_direction is not None:
            a.append(-extra_direction[k])
        eqs.append((tuple(a), x[k]))
    eqs.append((tuple([ONE] * nv + [ZERO] * (nvars - nv)), ONE))
    ineqs = [(_unit(nvars, i, -ONE), ZERO) for i in range(nv + nr)]
    return nvars, ineqs, eqs


def hull_membership(vdata: VData, x: Sequence) -> bool:
    if not vdata.vertices:
        raise ConvCrossInputError("empty vertex list")
    _check_dim(vdata.dim, x)
    x = tuple(Fraction(v) for v in x)
    if x in vdata.vertices:
        return True
    nvars, ineqs, eqs = _combination_lp(vdata, x)
    return bool(lp_feasible(ineqs, eqs, nvars))


def is_interior(vdata: VData, x: Sequence) -> bool:
    """
    x in int(conv V + cone R): x must move a positive step along every
    direction +e_i and -e_i without leaving the set.
    """
    _check_dim(vdata.dim, x)
    x = tuple(Fraction(v) for v in x)
    for i in range(vdata.dim):
        for sign in (ONE, -ONE):
            if sign < 0 and i in vdata.rays:
                continue
            d = _unit(vdata.dim, i, sign)
            nvars, ineqs, eqs = _combination_lp(vdata, x, d)
            outcome = lp_solve(
                LPProblem(nvars, _unit(nvars, nvars - 1), ineqs, eqs)
            )
            if outcome.status is LPStatus.INFEASIBLE:
                return False
            if outcome.is_optimal and outcome.value <= 0:
                return False
    return True


def hull_of_union(cells: Sequence[Cell]) -> VData:
    if not cells:
        raise ConvCrossInputError("hull of an empty cell list")
    dim = cells[0].dim
    points, rays = [], set()
    for i, cell in enumerate(cells):
        if cell.dim != dim:
            raise ConvCrossInputError(
                f"cell {i} has dimension {cell.dim}, expected {dim}"
            )
        points.extend(cell.vdata.vertices)
        rays |= cell.ext
    return VData(points, rays, dim)


def extreme_points(vdata: VData) -> VData:
    """Drops every generator lying in the hull of the remaining ones."""
    kept = list(vdata.vertices)
    for v in vdata.vertices:
        if len(kept) == 1:
            break
        others = VData([p for p in kept if p != v], vdata.rays, vdata.dim)
        if hull_membership(others, v):
            kept.remove(v)
    return VData(kept, vdata.rays, vdata.dim)


def affine_rank(
    points: Sequence[Point], directions: Sequence[Point] = ()
) -> int:
    if not points:
        return -1
    base = points[0]
    rows = [
        tuple(p[k] - base[k] for k in range(len(base))) for p in points[1:]
    ]
    rows += list(directions)
    return _rank(rows)


def _rank(rows) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(rank + 1, len(m)):
            f = m[r][col] / m[rank][col]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _normal(vectors: List[Point], dim: int) -> Optional[Point]:
    if dim == 1:
        return (ONE,)
    if dim == 2:
        (u,) = vectors
        return (u[1], -u[0])
    u, v = vectors
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _primitive(a: Point, b: Fraction) -> Halfspace:
    """Scales (a, b) so that a is a primitive integer vector."""
    lcm = reduce(
        lambda x, y: x * y // gcd(x, y), (v.denominator for v in a), 1
    )
    ints = [int(v * lcm) for v in a]
    g = reduce(gcd, (abs(v) for v in ints if v), 0) or 1
    scale = Fraction(lcm, g)
    return tuple(Fraction(v, g) for v in ints), b * scale


def facet_rows(vdata: VData) -> Tuple[Halfspace, ...]:
    """
    Irredundant H-representation of conv(V) + cone(R), dim <= 3. A
    candidate hyperplane is spanned by a vertex together with n - 1
    other generators (vertices or ray directions); it is kept when every
    vertex lies weakly below it and every ray points into it.
    """
    n = vdata.dim
    if n > MAX_FACET_DIM:
        raise UnsupportedError(
            f"facet enumeration is limited to dimension {MAX_FACET_DIM}"
        )
    verts = list(vdata.vertices)
    dirs = [_unit(n, j, -ONE) for j in vdata.rays]
    if not verts:
        raise ConvCrossInputError("empty vertex list")
    if affine_rank(verts, dirs) < n:
        raise GeometryError("generators are not full-dimensional")

    generators = [("v", p) for p in verts] + [("d", d) for d in dirs]
    found = SortedSet()
    for i, p0 in enumerate(verts):
        later = generators[i + 1 :]
        for combo in itertools.combinations(later, n - 1):
            vectors = [
                tuple(g[k] - p0[k] for k in range(n)) if kind == "v" else g
                for kind, g in combo
            ]
            a = _normal(vectors, n)
            if not any(a):
                continue
            b = dot(a, p0)
            for s in (ONE, -ONE):
                sa, sb = tuple(s * v for v in a), s * b
                if all(dot(sa, v) <= sb for v in verts) and all(
                    dot(sa, d) <= 0 for d in dirs
                ):
                    found.add(_primitive(sa, sb))
                    break
    return tuple(found)


def facets(vdata: VData) -> HPolytope:
    if vdata.dim > MAX_FACET_DIM:
        raise UnsupportedError(
            f"facet enumeration is limited to dimension {MAX_FACET_DIM}"
        )
    if vdata.rays:
        raise ConvCrossInputError("facets() needs bounded V-data")
    return HPolytope(vdata.dim, facet_rows(vdata))
