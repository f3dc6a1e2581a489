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
Crosses

    T = U_1 x S_2 x ... x S_N  u  ...  u  S_1 x ... x S_{N-1} x U_N

and the additive region W = {sum_j Phi_{S_j,U_j}(x_j) < 1}. Membership
of the closed hull of T is decided twice: over the vertex union of the
slabs, and through one LP that writes x as sum_k y^k with y^k in t_k T_k
and t in the unit simplex. Both answers must agree.
"""

import itertools
import logging

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from convcross.exceptions import (
    ConvCrossInputError,
    DomainError,
    GeometryError,
    InvariantViolation,
)
from convcross.extremal import ExtremalProblem, phi, phi_dual
from convcross.generators import CrossSampler, random_extremal_cells
from convcross.polytope import (
    MAX_FACET_DIM,
    Cell,
    VData,
    affine_rank,
    contains,
    extreme_points,
    facet_rows,
    hull_membership,
)
from convcross.ratlp import lp_feasible
from convcross.util import (
    Point,
    SplitMix64,
    dot,
    format_point,
    format_rational,
)


logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


class _BlockForm(NamedTuple):
    """
    A convex block either as H-rows (`rows`) or as a vertex list
    (`vertices`), extended by the rays -e_j for j in `rays`.
    """

    rows: Optional[Tuple]
    vertices: Optional[Tuple]
    rays: Tuple[int, ...]


class CrossFactor:
    """One block (S_j, U_j). conv(S_j) must be full-dimensional."""

    def __init__(self, S: Sequence[Cell], U: Cell):
        self._init(ExtremalProblem(S, U), strict=True)

    @classmethod
    def from_problem(cls, prob: ExtremalProblem, strict=True) -> "CrossFactor":
        factor = cls.__new__(cls)
        factor._init(prob, strict)
        return factor

    def _init(self, prob: ExtremalProblem, strict: bool):
        self.extremal = prob
        self.dim = prob.dim
        self.S_hull = extreme_points(prob.S_vdata)
        self.U_hull = extreme_points(prob.U_vdata)
        directions = [
            tuple(-ONE if k == j else ZERO for k in range(self.dim))
            for j in self.S_hull.rays
        ]
        if strict and affine_rank(self.S_hull.vertices, directions) < self.dim:
            raise GeometryError(
                "conv(S) has empty interior; the cross theorem needs "
                "full-dimensional S"
            )

    @property
    def S(self):
        return self.extremal.S

    @property
    def U(self):
        return self.extremal.U

    @cached_property
    def s_form(self) -> _BlockForm:
        cells = self.extremal.S
        if len(cells) == 1:
            cell = cells[0]
            return _BlockForm(cell.poly.rows, None, tuple(sorted(cell.ext)))
        return self._hull_form(self.S_hull)

    @cached_property
    def u_form(self) -> _BlockForm:
        if self.extremal.U is not None:
            U = self.extremal.U
            return _BlockForm(U.poly.rows, None, tuple(sorted(U.ext)))
        return self._hull_form(self.U_hull)

    def _hull_form(self, vdata: VData) -> _BlockForm:
        if vdata.dim <= MAX_FACET_DIM:
            try:
                # Facet rows already carry the rays.
                return _BlockForm(facet_rows(vdata), None, ())
            except GeometryError:
                pass
        return _BlockForm(None, vdata.vertices, vdata.rays)

    def __repr__(self):
        return f"CrossFactor({self.extremal!r})"


class CrossSpec:
    def __init__(self, factors: Sequence[CrossFactor]):
        if len(factors) < 2:
            raise ConvCrossInputError(
                f"a cross needs at least two factors, got {len(factors)}"
            )
        self.factors = tuple(factors)
        self.offsets = []
        offset = 0
        for f in self.factors:
            self.offsets.append(offset)
            offset += f.dim
        self.total_dim = offset

    @classmethod
    def random(
        cls, rng: SplitMix64, dims: Sequence[int], with_rays=False
    ) -> "CrossSpec":
        factors = []
        for n in dims:
            S, U = random_extremal_cells(rng, n, with_rays)
            factors.append(CrossFactor(S, U))
        return cls(factors)

    def split(self, x: Sequence) -> List[Point]:
        if len(x) != self.total_dim:
            raise ConvCrossInputError(
                f"point has dimension {len(x)}, expected {self.total_dim}"
            )
        x = tuple(Fraction(v) for v in x)
        return [x[o : o + f.dim] for o, f in zip(self.offsets, self.factors)]

    def permuted(self, order: Sequence[int]) -> "CrossSpec":
        return CrossSpec([self.factors[i] for i in order])

    def permute_point(self, x: Sequence, order: Sequence[int]) -> Point:
        blocks = self.split(x)
        return tuple(v for i in order for v in blocks[i])

    @cached_property
    def hull_vdata(self) -> VData:
        """Generators of the closed hull of T: the vertices of every slab."""
        return _slab_union(self.factors)

    @cached_property
    def hull_rows(self) -> Optional[Tuple]:
        """Facet rows of the closed hull of T, or None above dimension 3."""
        if self.total_dim > MAX_FACET_DIM:
            return None
        try:
            return facet_rows(self.hull_vdata)
        except GeometryError:
            return None

    @cached_property
    def product_vdata(self) -> VData:
        """Generators of conv(S_1) x ... x conv(S_N)."""
        hulls = [f.S_hull for f in self.factors]
        return _product(hulls, [h.rays for h in hulls])

    def prefix_problem(self, m: int) -> ExtremalProblem:
        """(S_1 x ... x S_m, W') for the first m factors."""
        if m == 1:
            return self.factors[0].extremal
        cached = self.__dict__.setdefault("_prefix", {})
        if m not in cached:
            sub = CrossSpec(self.factors[:m])
            cached[m] = ExtremalProblem.from_vdata(
                sub.product_vdata, sub.hull_vdata
            )
        return cached[m]

    @cached_property
    def product_problem(self) -> ExtremalProblem:
        return ExtremalProblem.from_vdata(self.product_vdata, self.hull_vdata)

    def __repr__(self):
        return f"CrossSpec(N={len(self.factors)}, total_dim={self.total_dim})"


def _product(blocks: Sequence[VData], rays: Sequence[Sequence[int]]) -> VData:
    offsets = list(itertools.accumulate([0] + [b.dim for b in blocks]))
    points = [
        tuple(v for part in combo for v in part)
        for combo in itertools.product(*(b.vertices for b in blocks))
    ]
    all_rays = [offsets[k] + j for k, rs in enumerate(rays) for j in rs]
    return VData(points, all_rays, offsets[-1])


def _slab_union(factors: Sequence[CrossFactor]) -> VData:
    points, rays = [], set()
    for k in range(len(factors)):
        blocks = [
            f.U_hull if i == k else f.S_hull for i, f in enumerate(factors)
        ]
        slab = _product(blocks, [b.rays for b in blocks])
        points.extend(slab.vertices)
        rays |= set(slab.rays)
    return extreme_points(VData(points, rays, sum(f.dim for f in factors)))


def cross_membership(spec: CrossSpec, x: Sequence) -> bool:
    blocks = spec.split(x)
    in_s = [hull_membership(f.S_hull, b) for f, b in zip(spec.factors, blocks)]
    for j, (factor, block) in enumerate(zip(spec.factors, blocks)):
        if not all(in_s[k] for k in range(len(blocks)) if k != j):
            continue
        if factor.U is not None:
            if contains(factor.U, block):
                return True
        elif hull_membership(factor.U_hull, block):
            return True
    return False


def w_value(spec: CrossSpec, x: Sequence) -> Fraction:
    total = ZERO
    for j, (factor, block) in enumerate(zip(spec.factors, spec.split(x))):
        try:
            total += phi(factor.extremal, block)
        except DomainError as e:
            raise DomainError(f"block {j + 1}: {e}") from None
    return total


class WClass(Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"

    @classmethod
    def of(cls, phi_sum: Fraction) -> "WClass":
        if phi_sum < 1:
            return cls.INSIDE
        if phi_sum == 1:
            return cls.BOUNDARY
        return cls.OUTSIDE


@dataclass(frozen=True)
class Trichotomy:
    phi_sum: Fraction
    w_class: WClass
    hull_member: bool

    @property
    def consistent(self) -> bool:
        if self.w_class is WClass.OUTSIDE:
            return not self.hull_member
        return self.hull_member

    def to_json(self):
        return {
            "phi_sum": format_rational(self.phi_sum),
            "class": self.w_class.value,
            "hull_member": self.hull_member,
        }


def _decomposition_member(spec: CrossSpec, x: Point) -> bool:
    """
    Feasibility of x = sum_k y^k, y^k in t_k T_k, t >= 0, sum t = 1.
    Block l of y^k lives in t_k U_l when l == k and in t_k conv(S_l)
    otherwise: scaled H-rows a.z <= t_k b, or sum lambda = t_k over a
    vertex list, plus free nonnegative ray coefficients.
    """
    N = len(spec.factors)
    nvars = N
    ineqs: List[Tuple[Dict[int, Fraction], Fraction]] = []
    eqs: List[Tuple[Dict[int, Fraction], Fraction]] = []
    parts: List[Dict[int, Fraction]] = [dict() for _ in range(spec.total_dim)]

    def nonneg(var):
        ineqs.append(({var: -ONE}, ZERO))

    for k in range(N):
        nonneg(k)
        for l, factor in enumerate(spec.factors):
            form = factor.u_form if l == k else factor.s_form
            off = spec.offsets[l]
            if form.rows is not None:
                z = list(range(nvars, nvars + factor.dim))
                nvars += factor.dim
                for a, b in form.rows:
                    row = {z[i]: a[i] for i in range(factor.dim) if a[i]}
                    row[k] = -b
                    ineqs.append((row, ZERO))
                for i in range(factor.dim):
                    parts[off + i][z[i]] = ONE
            else:
                lam = list(range(nvars, nvars + len(form.vertices)))
                nvars += len(lam)
                row = {var: ONE for var in lam}
                row[k] = -ONE
                eqs.append((row, ZERO))
                for var, v in zip(lam, form.vertices):
                    nonneg(var)
                    for i in range(factor.dim):
                        if v[i]:
                            parts[off + i][var] = v[i]
            for j in form.rays:
                nonneg(nvars)
                parts[off + j][nvars] = -ONE
                nvars += 1
    eqs.append(({k: ONE for k in range(N)}, ONE))
    for c, part in enumerate(parts):
        eqs.append((part, x[c]))

    def dense(rows):
        return [
            (tuple(row.get(i, ZERO) for i in range(nvars)), b)
            for row, b in rows
        ]

    return bool(lp_feasible(dense(ineqs), dense(eqs), nvars))


def hull_routes(spec: CrossSpec, x: Sequence) -> Tuple[bool, bool]:
    """Closed hull membership of x by the vertex and scaled routes."""
    x = tuple(v for block in spec.split(x) for v in block)
    if spec.hull_rows is not None:
        by_vertices = all(dot(a, x) <= b for a, b in spec.hull_rows)
    else:
        by_vertices = hull_membership(spec.hull_vdata, x)
    return by_vertices, _decomposition_member(spec, x)


def conv_cross_classify(spec: CrossSpec, x: Sequence) -> Trichotomy:
    phi_sum = w_value(spec, x)
    by_vertices, by_scaling = hull_routes(spec, x)
    if by_vertices != by_scaling:
        raise InvariantViolation(
            f"hull routes disagree at {format_point(x)}: "
            f"vertex union {by_vertices}, scaled decomposition {by_scaling}"
        )
    return Trichotomy(phi_sum, WClass.of(phi_sum), by_vertices)


def product_phi_check(
    spec: CrossSpec, x: Sequence, phi_sum: Optional[Fraction] = None
) -> Tuple[Fraction, Fraction]:
    """
    Phi of the product S_1 x ... x S_N relative to W, and the sum. A
    `phi_sum` already computed for x is reused. A sum below 1 puts x in
    the open set W, so no interiority LPs are run.
    """
    rhs = w_value(spec, x) if phi_sum is None else Fraction(phi_sum)
    if rhs >= 1:
        raise DomainError(
            f"{format_point(x)} is not interior to W (sum of Phi is {rhs})"
        )
    x = tuple(v for block in spec.split(x) for v in block)
    rows = spec.hull_rows
    if rows is not None and not all(dot(a, x) < b for a, b in rows):
        raise InvariantViolation(
            f"{format_point(x)} has sum of Phi {rhs} < 1 but is not "
            "interior to conv(T)"
        )
    lhs, _ = phi_dual(spec.product_problem, x, known_interior=True)
    return lhs, rhs


def recursive_phi_sum(spec: CrossSpec, x: Sequence, inside=False) -> Fraction:
    """
    Phi_{S',W'}(x') + Phi_{S_N,U_N}(x_N), where (S', W') is the cross
    of the first N - 1 factors. With `inside`, x is known to lie in W,
    so both parts are interior to their sets.
    """
    blocks = spec.split(x)
    N = len(spec.factors)
    head = tuple(v for block in blocks[:-1] for v in block)
    try:
        tail = phi(spec.factors[-1].extremal, blocks[-1], inside)
        return phi(spec.prefix_problem(N - 1), head, inside) + tail
    except DomainError as e:
        raise DomainError(f"recursive split: {e}") from None


@dataclass
class CrossReport:
    samples: int = 0
    classes: Dict[str, int] = field(
        default_factory=lambda: {c.value: 0 for c in WClass}
    )
    kinds: Dict[str, int] = field(default_factory=dict)
    skipped: int = 0
    violations: List[dict] = field(default_factory=list)
    additivity_checked: int = 0
    recursive_checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def violation(self, index, kind, x, reason, **details):
        entry = {
            "sample": index,
            "kind": kind,
            "point": format_point(x),
            "reason": reason,
        }
        for k, v in details.items():
            entry[k] = format_rational(v) if isinstance(v, Fraction) else v
        self.violations.append(entry)

    def to_json(self):
        return {
            "samples": self.samples,
            "classes": dict(self.classes),
            "kinds": dict(sorted(self.kinds.items())),
            "skipped": self.skipped,
            "additivity_checked": self.additivity_checked,
            "recursive_checked": self.recursive_checked,
            "violations": list(self.violations),
        }


def check_sample(
    spec: CrossSpec,
    report: CrossReport,
    index: int,
    kind: str,
    x: Point,
    additivity=True,
):
    """Classifies one sample and records every contract it breaks."""
    try:
        tri = conv_cross_classify(spec, x)
    except DomainError as e:
        logger.debug(f"sample {index} skipped: {e}")
        report.skipped += 1
        return None
    except InvariantViolation as e:
        report.violation(index, kind, x, str(e))
        return None
    report.classes[tri.w_class.value] += 1
    if not tri.consistent:
        report.violation(
            index,
            kind,
            x,
            "trichotomy contract broken",
            phi_sum=tri.phi_sum,
            w_class=tri.w_class.value,
            hull_member=tri.hull_member,
        )
    if kind == CrossSampler.CROSS:
        if not cross_membership(spec, x):
            report.violation(
                index, kind, x, "generated cross point is not in T"
            )
        elif not tri.hull_member:
            report.violation(index, kind, x, "point of T outside conv(T)")
    if additivity and tri.w_class is WClass.INSIDE:
        report.additivity_checked += 1
        lhs, rhs = product_phi_check(spec, x, tri.phi_sum)
        if lhs != rhs:
            report.violation(
                index, kind, x, "product additivity fails", lhs=lhs, rhs=rhs
            )
        if len(spec.factors) > 2:
            report.recursive_checked += 1
            rec = recursive_phi_sum(spec, x, inside=True)
            if rec != tri.phi_sum:
                report.violation(
                    index,
                    kind,
                    x,
                    "recursive split disagrees",
                    recursive=rec,
                    phi_sum=tri.phi_sum,
                )
    return tri


def verify_prop24(
    spec: CrossSpec, num_samples: int, seed: int, additivity=True
) -> CrossReport:
    """
    Seeded campaign over grid, cross and boundary samples checking the
    trichotomy contract, route agreement, T inside conv(T), product
    additivity and the recursive split.
    """
    sampler = CrossSampler(
        [f.extremal for f in spec.factors], SplitMix64(seed)
    )
    report = CrossReport()
    logger.info(f"Verifying {spec!r} on {num_samples} samples (seed {seed})")
    for index in range(num_samples):
        kind, x = sampler.sample()
        report.samples += 1
        report.kinds[kind] = report.kinds.get(kind, 0) + 1
        check_sample(spec, report, index, kind, x, additivity)
    if report.passed:
        logger.verbose(f"classes {report.classes}, skipped {report.skipped}")
    else:
        logger.notice(f"{len(report.violations)} violations")
    return report
