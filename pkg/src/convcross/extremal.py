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
The convex extremal function

    Phi_{S,U} = sup{phi convex on U : phi <= 1, phi|_S <= 0}

evaluated pointwise. The affine competitor LP (`phi_dual`) and the
Minkowski gauge LP (`phi_gauge`) are LP duals of each other; `phi`
evaluates both and insists they agree exactly.
"""

import logging

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence

from convcross.exceptions import (
    ConvCrossInputError,
    DomainError,
    InvariantViolation,
)
from convcross.polytope import (
    Cell,
    VData,
    cell_is_interior,
    contains,
    extreme_points,
    hull_membership,
    hull_of_union,
    is_interior,
)
from convcross.ratlp import LPProblem, lp_minimize, lp_solve
from convcross.util import Point, dot, format_point, format_rational


logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class AffineCompetitor(NamedTuple):
    c: Point
    d: Fraction

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.c, x) + self.d

    def to_json(self):
        return {"c": format_point(self.c), "d": format_rational(self.d)}


class ExtremalProblem:
    """
    A pair S subset U. S is read through the hull of its cells and U is
    a single convex cell, or any pair of V-data via `from_vdata`.
    """

    def __init__(self, S: Sequence[Cell], U: Cell):
        if not S:
            raise ConvCrossInputError("S must contain at least one cell")
        for i, cell in enumerate(S):
            if cell.dim != U.dim:
                raise ConvCrossInputError(
                    f"S cell {i} has dimension {cell.dim}, "
                    f"U has dimension {U.dim}"
                )
        self.S = tuple(S)
        self.U = U
        self.dim = U.dim
        self.S_vdata = hull_of_union(self.S)
        self.U_vdata = U.vdata
        self._check_subset(lambda v: contains(U, v))

    @classmethod
    def from_vdata(cls, S_vdata: VData, U_vdata: VData) -> "ExtremalProblem":
        if S_vdata.dim != U_vdata.dim:
            raise ConvCrossInputError(
                f"S has dimension {S_vdata.dim}, U has dimension {U_vdata.dim}"
            )
        prob = cls.__new__(cls)
        prob.S = ()
        prob.U = None
        prob.dim = U_vdata.dim
        prob.S_vdata = S_vdata
        prob.U_vdata = U_vdata
        prob._check_subset(lambda v: hull_membership(U_vdata, v))
        return prob

    @classmethod
    def from_points(
        cls, points: Sequence[Point], U: Cell, rays=()
    ) -> "ExtremalProblem":
        """S given as a point cloud (plus rays) inside the cell U."""
        S_vdata = VData(points, rays, U.dim)
        if not S_vdata.vertices:
            raise ConvCrossInputError("S must contain at least one point")
        prob = cls.__new__(cls)
        prob.S = ()
        prob.U = U
        prob.dim = U.dim
        prob.S_vdata = S_vdata
        prob.U_vdata = U.vdata
        prob._check_subset(lambda v: contains(U, v))
        return prob

    def _check_subset(self, member):
        extra = set(self.S_vdata.rays) - set(self.U_vdata.rays)
        if extra:
            raise ConvCrossInputError(
                f"S recedes along {sorted(j + 1 for j in extra)} "
                "but U does not"
            )
        for v in self.S_vdata.vertices:
            if not member(v):
                raise ConvCrossInputError(
                    f"S is not contained in U: vertex {format_point(v)}"
                )

    @property
    def ext(self):
        return self.U_vdata.rays

    def is_interior(self, x: Sequence[Fraction]) -> bool:
        if self.U is not None:
            return cell_is_interior(self.U, x)
        return is_interior(self.U_vdata, x)

    def require_interior(self, x: Sequence[Fraction]) -> Point:
        if len(x) != self.dim:
            raise ConvCrossInputError(
                f"point has dimension {len(x)}, expected {self.dim}"
            )
        x = tuple(Fraction(v) for v in x)
        if not self.is_interior(x):
            raise DomainError(
                f"{format_point(x)} is not interior to U; Phi is only "
                "evaluated on the open set"
            )
        return x

    def __repr__(self):
        return f"ExtremalProblem(S={self.S_vdata!r}, U={self.U_vdata!r})"


def _point(prob, x, known_interior) -> Point:
    if known_interior:
        return tuple(Fraction(v) for v in x)
    return prob.require_interior(x)


def phi_dual(
    prob: ExtremalProblem, x: Sequence[Fraction], known_interior=False
):
    """
    Maximizes l(x) = c.x + d over affine l with l <= 0 on S, l <= 1 on
    U and c_j >= 0 along every ray -e_j of U.
    """
    x = _point(prob, x, known_interior)
    n = prob.dim
    ineqs = [(v + (ONE,), ZERO) for v in prob.S_vdata.vertices]
    ineqs += [(w + (ONE,), ONE) for w in prob.U_vdata.vertices]
    for j in prob.ext:
        row = tuple(-ONE if k == j else ZERO for k in range(n + 1))
        ineqs.append((row, ZERO))
    outcome = lp_solve(LPProblem(n + 1, x + (ONE,), ineqs))
    if not outcome.is_optimal:
        raise InvariantViolation(
            f"competitor LP is {outcome.status.value} at {format_point(x)}"
        )
    witness = AffineCompetitor(outcome.point[:n], outcome.point[n])
    return outcome.value, witness


def phi_gauge(
    prob: ExtremalProblem, x: Sequence[Fraction], known_interior=False
) -> Fraction:
    """
    min t such that x = sum a_i v_i + sum b_j w_j - sum g_k e_k with
    a, b, g >= 0, sum a = 1 - t and sum b = t.
    """
    x = _point(prob, x, known_interior)
    sv, uv = prob.S_vdata.vertices, prob.U_vdata.vertices
    rays = prob.ext
    nvars = len(sv) + len(uv) + len(rays)
    eqs = []
    for k in range(prob.dim):
        a = [v[k] for v in sv] + [w[k] for w in uv]
        a += [-ONE if j == k else ZERO for j in rays]
        eqs.append((tuple(a), x[k]))
    weights = [ONE] * (len(sv) + len(uv)) + [ZERO] * len(rays)
    eqs.append((tuple(weights), ONE))
    ineqs = [
        (tuple(-ONE if i == k else ZERO for i in range(nvars)), ZERO)
        for k in range(nvars)
    ]
    objective = [ZERO] * len(sv) + [ONE] * len(uv) + [ZERO] * len(rays)
    outcome = lp_minimize(LPProblem(nvars, objective, ineqs, eqs))
    if not outcome.is_optimal:
        raise InvariantViolation(
            f"gauge LP is {outcome.status.value} at {format_point(x)}"
        )
    return outcome.value


def phi(
    prob: ExtremalProblem, x: Sequence[Fraction], known_interior=False
) -> Fraction:
    """
    Both formulations at x. Pass `known_interior` when the caller has
    already established that x lies in the interior of U.
    """
    x = _point(prob, x, known_interior)
    value, _ = phi_dual(prob, x, known_interior=True)
    gauge = phi_gauge(prob, x, known_interior=True)
    if value != gauge:
        raise InvariantViolation(
            f"Phi formulations disagree at {format_point(x)}: "
            f"competitor {value}, gauge {gauge}"
        )
    return value


def sublevel_vdata(prob: ExtremalProblem, mu: Fraction) -> VData:
    """
    Generators of the closure of {Phi < mu}, which for convex S in U is
    (1 - mu) conv(S) + mu U.
    """
    mu = Fraction(mu)
    if not 0 < mu < 1:
        raise ConvCrossInputError(f"mu must lie in (0, 1), got {mu}")
    sv = extreme_points(prob.S_vdata).vertices
    uv = extreme_points(prob.U_vdata).vertices
    points = [
        tuple((1 - mu) * a + mu * b for a, b in zip(v, w))
        for v in sv
        for w in uv
    ]
    return VData(points, prob.ext, prob.dim)


def sublevel_problem(prob: ExtremalProblem, mu: Fraction) -> ExtremalProblem:
    return ExtremalProblem.from_vdata(prob.S_vdata, sublevel_vdata(prob, mu))


def scale_vdata(vdata: VData, t: Fraction, center: Point) -> VData:
    """center + t (X - center); rays are unchanged."""
    return VData(
        [
            tuple(c + t * (v - c) for v, c in zip(p, center))
            for p in vdata.vertices
        ],
        vdata.rays,
        vdata.dim,
    )


@dataclass
class PropertyResult:
    checked: int = 0
    counterexamples: List[dict] = field(default_factory=list)
    skipped: List[dict] = field(default_factory=list)
    final_gap: Optional[Fraction] = None

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def fail(self, **details):
        self.counterexamples.append(_jsonable(details))

    def skip(self, point, reason):
        self.skipped.append({"point": format_point(point), "reason": reason})

    def to_json(self):
        out = {"pass": self.passed, "checked": self.checked}
        if self.counterexamples:
            out["counterexamples"] = self.counterexamples
        if self.skipped:
            out["skipped"] = self.skipped
        if self.final_gap is not None:
            out["final_gap"] = format_rational(self.final_gap)
        return out


def _jsonable(details):
    out = {}
    for k, v in details.items():
        if isinstance(v, Fraction):
            v = format_rational(v)
        elif isinstance(v, tuple):
            v = format_point(v)
        elif isinstance(v, list):
            v = [
                format_rational(e) if isinstance(e, Fraction) else e
                for e in v
            ]
        out[k] = v
    return out


@dataclass
class PropertyReport:
    properties: Dict[str, PropertyResult]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties.values())

    def violations(self):
        return [
            dict(property=name, **cex)
            for name, p in self.properties.items()
            for cex in p.counterexamples
        ]

    def to_json(self):
        return {name: p.to_json() for name, p in self.properties.items()}


CHAIN_STEPS = (Fraction(3, 4), Fraction(7, 8), Fraction(15, 16))
GAP_BOUND = Fraction(1, 10)


def default_chain(prob: ExtremalProblem, steps=CHAIN_STEPS):
    """
    Nested problems increasing towards (S, U): both sets shrunk towards
    the vertex barycenter of S by the factors in `steps`.
    """
    sv = prob.S_vdata.vertices
    center = tuple(sum(p[k] for p in sv) / len(sv) for k in range(prob.dim))
    return [
        ExtremalProblem.from_vdata(
            scale_vdata(prob.S_vdata, t, center),
            scale_vdata(prob.U_vdata, t, center),
        )
        for t in steps
    ]


def _vdata_inside(inner: VData, outer: VData) -> bool:
    return set(inner.rays) <= set(outer.rays) and all(
        hull_membership(outer, v) for v in inner.vertices
    )


def _is_nested(inner: ExtremalProblem, outer: ExtremalProblem) -> bool:
    return _vdata_inside(inner.S_vdata, outer.S_vdata) and _vdata_inside(
        inner.U_vdata, outer.U_vdata
    )


def verify_remark22(
    prob: ExtremalProblem,
    mu: Fraction,
    points: Sequence[Point],
    chain: Optional[Sequence[ExtremalProblem]] = None,
    cloud: Sequence[Point] = (),
    gap_bound: Optional[Fraction] = None,
) -> PropertyReport:
    """
    Checks range and vanishing on S (a), hull invariance (b), sublevel
    rescaling (c) and monotone limits (e) at the given points.

    For (e) the largest gap between Phi at the last chain element and
    Phi itself is recorded; with `gap_bound` a gap at or above the
    bound is a counterexample.
    """
    mu = Fraction(mu)
    a, b, c, e = (PropertyResult() for _ in range(4))

    hull = extreme_points(prob.S_vdata)
    prob_hull = ExtremalProblem.from_vdata(hull, prob.U_vdata)
    prob_cloud = None
    if cloud:
        prob_cloud = ExtremalProblem.from_vdata(
            VData(list(hull.vertices) + list(cloud), hull.rays, hull.dim),
            prob.U_vdata,
        )
    prob_mu = sublevel_problem(prob, mu)
    if chain is None:
        chain = default_chain(prob)
    chain = list(chain)
    for k in range(len(chain)):
        outer = chain[k + 1] if k + 1 < len(chain) else prob
        if not _is_nested(chain[k], outer):
            e.fail(reason="chain is not nested", step=k)

    for v in hull.vertices:
        if not prob.is_interior(v):
            a.skip(v, "S vertex on the boundary of U")
            continue
        a.checked += 1
        value = phi(prob, v)
        if value != 0:
            a.fail(point=v, value=value, reason="Phi does not vanish on S")

    for x in points:
        x = tuple(Fraction(v) for v in x)
        if not prob.is_interior(x):
            for result in (a, b, c, e):
                result.skip(x, "not interior to U")
            continue
        value = phi(prob, x, known_interior=True)

        a.checked += 1
        if not 0 <= value < 1:
            a.fail(point=x, value=value, reason="Phi outside [0, 1)")

        b.checked += 1
        hull_value = phi(prob_hull, x, known_interior=True)
        values = [value, hull_value]
        if prob_cloud is not None:
            values.append(phi(prob_cloud, x, known_interior=True))
        if len(set(values)) != 1:
            b.fail(point=x, values=values)

        if value < mu:
            c.checked += 1
            scaled = phi(prob_mu, x)
            glued = max(value, mu * scaled)
            if mu * scaled != value or glued != value:
                c.fail(point=x, value=value, scaled=mu * scaled)
        else:
            c.skip(x, "not interior to U_mu")

        if chain:
            if not chain[0].is_interior(x):
                e.skip(x, "not interior to the first chain element")
            else:
                e.checked += 1
                seq = [phi(p, x, known_interior=True) for p in chain]
                if any(s < t for s, t in zip(seq, seq[1:])) or seq[-1] < value:
                    e.fail(point=x, values=seq + [value])
                gap = seq[-1] - value
                if e.final_gap is None or gap > e.final_gap:
                    e.final_gap = gap
                if gap_bound is not None and gap >= gap_bound:
                    e.fail(
                        point=x, gap=gap, reason="final chain gap too large"
                    )

    report = PropertyReport({"a": a, "b": b, "c": c, "e": e})
    summary = ", ".join(
        f"{k}={'pass' if p.passed else 'FAIL'}"
        for k, p in report.properties.items()
    )
    logger.debug(f"remark checks: {summary}")
    return report
