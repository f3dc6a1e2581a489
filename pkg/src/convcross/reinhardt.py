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
Reinhardt domains through their log-images.

A `ReinhardtDomain` is a union of log-space cells together with one
flag per coordinate telling whether the domain meets the axis
{z_j = 0}. A cell receding along -e_j is how a log-image reaches that
axis; the flags record which of those contacts the domain includes.
"""

import decimal
import itertools
import logging

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import List, NamedTuple, Optional, Sequence, Tuple

from convcross.cross import (
    CrossFactor,
    CrossReport,
    CrossSpec,
    WClass,
    check_sample,
)
from convcross.exceptions import (
    ConvCrossInputError,
    DomainError,
    InvariantViolation,
    UnsupportedError,
)
from convcross.extremal import ExtremalProblem, phi
from convcross.generators import CrossSampler, interior_point
from convcross.polytope import (
    MAX_FACET_DIM,
    Cell,
    HPolytope,
    VData,
    contains,
    extreme_points,
    facet_rows,
    facets,
    hull_membership,
    hull_of_union,
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

TRUNCATION = Fraction(64)
PRECISION = 30


class _NegInf:
    """log 0. Sorts below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __gt__(self, other):
        return False

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"


NEG_INF = _NegInf()


class LogPoint(NamedTuple):
    """
    (log|z_1|, ..., log|z_n|) with NEG_INF for vanishing coordinates.
    `exact` is False when the values were derived from decimal moduli.
    """

    coords: tuple
    exact: bool = True

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def axes(self) -> frozenset:
        return frozenset(j for j, v in enumerate(self.coords) if v is NEG_INF)

    @property
    def finite(self) -> bool:
        return not self.axes

    def to_json(self):
        return [
            str(v) if v is NEG_INF else format_rational(v)
            for v in self.coords
        ]


def log_point(moduli: Sequence, precision=PRECISION) -> LogPoint:
    """
    Coordinatewise log of moduli. Zero maps to NEG_INF and 1 to 0
    exactly; any other modulus is rounded to `precision` digits and
    marks the point inexact.
    """
    ctx = decimal.Context(prec=precision)
    coords, exact = [], True
    for i, m in enumerate(moduli):
        try:
            if not isinstance(m, decimal.Decimal):
                m = decimal.Decimal(str(m))
        except decimal.InvalidOperation:
            raise ConvCrossInputError(
                f"malformed modulus {m!r}", f"[{i}]"
            ) from None
        if not m.is_finite() or m < 0:
            raise ConvCrossInputError(
                f"modulus must be finite and >= 0, got {m}", f"[{i}]"
            )
        if m == 0:
            coords.append(NEG_INF)
        elif m == 1:
            coords.append(ZERO)
        else:
            coords.append(Fraction(ctx.ln(m)))
            exact = False
    return LogPoint(tuple(coords), exact)


def modulus_point(
    p: LogPoint, precision=PRECISION
) -> Tuple[decimal.Decimal, ...]:
    ctx = decimal.Context(prec=precision)
    out = []
    for v in p.coords:
        if v is NEG_INF:
            out.append(decimal.Decimal(0))
        else:
            v = Fraction(v)
            x = ctx.divide(
                decimal.Decimal(v.numerator), decimal.Decimal(v.denominator)
            )
            out.append(ctx.exp(x))
    return tuple(out)


def as_log_point(p) -> LogPoint:
    if isinstance(p, LogPoint):
        return p
    return LogPoint(tuple(v if v is NEG_INF else Fraction(v) for v in p))


class ReinhardtDomain:
    def __init__(
        self, n: int, cells: Sequence[Cell], axis_meets: Sequence[bool]
    ):
        if not cells:
            raise ConvCrossInputError("a domain needs at least one cell")
        for i, cell in enumerate(cells):
            if cell.dim != n:
                raise ConvCrossInputError(
                    f"cell has dimension {cell.dim}, expected {n}",
                    f"cells[{i}]",
                )
        if len(axis_meets) != n:
            raise ConvCrossInputError(
                f"{len(axis_meets)} axis flags for dimension {n}", "axis_meets"
            )
        receding = frozenset().union(*(cell.ext for cell in cells))
        for j, meets in enumerate(axis_meets):
            if meets and j not in receding:
                raise ConvCrossInputError(
                    f"domain meets axis {j + 1} but no cell recedes along "
                    f"-e_{j + 1}",
                    f"axis_meets[{j}]",
                )
        self.n = n
        self.cells = tuple(cells)
        self.axis_meets = tuple(bool(v) for v in axis_meets)
        self.receding = receding

    @cached_property
    def hull(self) -> VData:
        return hull_of_union(self.cells)

    def __repr__(self):
        return (
            f"ReinhardtDomain(n={self.n}, cells={len(self.cells)}, "
            f"axis_meets={list(self.axis_meets)})"
        )


def log_box(
    lower: Sequence, upper: Sequence, truncation=TRUNCATION
) -> ReinhardtDomain:
    """
    The domain with log-image prod (lower_j, upper_j). A `None` lower
    bound reaches the axis: the cell is cut at -truncation and recedes.
    """
    truncation = Fraction(truncation)
    lo, ext = [], []
    for j, v in enumerate(lower):
        if v is None:
            lo.append(min(-truncation, Fraction(upper[j]) - 1))
            ext.append(j)
        else:
            lo.append(Fraction(v))
    cell = Cell(HPolytope.box(lo, [Fraction(v) for v in upper]), ext)
    n = len(lower)
    return ReinhardtDomain(n, [cell], [j in ext for j in range(n)])


def polydisc(log_radii: Sequence, truncation=TRUNCATION) -> ReinhardtDomain:
    return log_box([None] * len(log_radii), log_radii, truncation)


def hartogs_figure(
    log_delta, log_eps, truncation=TRUNCATION
) -> ReinhardtDomain:
    """
    {|z_1| < 1, delta < |z_2| < 1} u {|z_1| < eps, |z_2| < 1} in the
    unit bidisc, with log_delta and log_eps given directly.
    """
    m = -Fraction(truncation)
    thick = Cell(HPolytope.box([m, Fraction(log_delta)], [ZERO, ZERO]), [0])
    thin = Cell(HPolytope.box([m, m], [Fraction(log_eps), ZERO]), [0, 1])
    return ReinhardtDomain(2, [thick, thin], [True, True])


def _in_cell_with_axes(cell: Cell, p: LogPoint) -> bool:
    """
    Some point of the cell agrees with p off its axes; coordinates on an
    axis are free since the cell recedes along them.
    """
    Z = p.axes
    if not Z <= cell.ext:
        return False
    if not Z:
        return contains(cell, p.coords)
    free = sorted(Z)
    pushed = sorted(cell.ext - Z)
    nvars = len(free) + len(pushed)
    column = {j: i for i, j in enumerate(free + pushed)}
    base = [ZERO if v is NEG_INF else v for v in p.coords]
    ineqs = []
    for a, b in cell.poly.rows:
        row = [ZERO] * nvars
        for j, i in column.items():
            row[i] = a[j]
        fixed = sum(
            (a[k] * base[k] for k in range(cell.dim) if k not in Z), ZERO
        )
        ineqs.append((tuple(row), b - fixed))
    for j in pushed:
        row = tuple(-ONE if i == column[j] else ZERO for i in range(nvars))
        ineqs.append((row, ZERO))
    return bool(lp_feasible(ineqs, num_vars=nvars))


def contains_point(dom: ReinhardtDomain, p) -> bool:
    p = as_log_point(p)
    if p.dim != dom.n:
        raise ConvCrossInputError(
            f"point has dimension {p.dim}, expected {dom.n}"
        )
    if not all(dom.axis_meets[j] for j in p.axes):
        return False
    return any(_in_cell_with_axes(cell, p) for cell in dom.cells)


class Convexity(Enum):
    TRUE = "true"
    FALSE = "false"
    UNFALSIFIED = "unfalsified"


class LogConvexity(NamedTuple):
    status: Convexity
    witness: Optional[Point] = None
    samples: int = 0

    def __bool__(self):
        return self.status is Convexity.TRUE

    def to_json(self):
        out = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = format_point(self.witness)
        if self.status is Convexity.UNFALSIFIED:
            out["samples"] = self.samples
        return out


def _in_union(dom: ReinhardtDomain, x: Point) -> bool:
    return any(contains(cell, x) for cell in dom.cells)


def _midpoint_witness(
    dom: ReinhardtDomain, points: Sequence[Point]
) -> Optional[Point]:
    for p, q in itertools.combinations(points, 2):
        mid = tuple((a + b) / 2 for a, b in zip(p, q))
        if not _in_union(dom, mid):
            return mid
    return None


def _interval_gap(dom: ReinhardtDomain) -> Optional[Point]:
    spans = []
    for cell in dom.cells:
        lo, hi = cell.poly.vertex_list[0][0], cell.poly.vertex_list[-1][0]
        spans.append((None if 0 in cell.ext else lo, hi))
    # Receding spans first; their lower end is unbounded.
    spans.sort(key=lambda s: (s[0] is not None, s[0] or 0))
    reach = spans[0][1]
    for lo, hi in spans[1:]:
        if lo is not None and lo > reach:
            return ((reach + lo) / 2,)
        reach = max(reach, hi)
    return None


def _arrangement_witness(dom: ReinhardtDomain) -> Optional[Point]:
    """
    Tests one point in every open face of the line arrangement spanned
    by the cell facets and the hull facets. Each face lies entirely in
    or entirely out of both sets, so this decides hull minus union.
    """
    hull_rows = facet_rows(dom.hull)
    lines = {row for cell in dom.cells for row in facet_rows(cell.vdata)}
    lines |= set(hull_rows)
    lines = sorted(lines)
    xs = set()
    for (a, b), (c, d) in itertools.combinations(lines, 2):
        det = a[0] * c[1] - a[1] * c[0]
        if det:
            xs.add((b * c[1] - a[1] * d) / det)
    for a, b in lines:
        if a[1] == 0:
            xs.add(b / a[0])
    for x0 in _sample_values(xs):
        ys = {(b - a[0] * x0) / a[1] for a, b in lines if a[1]}
        for y0 in _sample_values(ys):
            pt = (x0, y0)
            if not all(dot(a, pt) <= b for a, b in hull_rows):
                continue
            if not _in_union(dom, pt):
                return pt
    return None


def _sample_values(cuts) -> List[Fraction]:
    """One value inside each open interval the cuts leave on the line."""
    cuts = sorted(cuts)
    if not cuts:
        return [ZERO]
    values = [cuts[0] - 1, cuts[-1] + 1]
    values += [(u + v) / 2 for u, v in zip(cuts, cuts[1:])]
    return values


def is_log_convex(dom: ReinhardtDomain, samples=200, seed=0) -> LogConvexity:
    """
    Exact for a single cell and for n <= 2; a seeded midpoint search
    otherwise, which can only ever falsify.
    """
    if len(dom.cells) == 1:
        return LogConvexity(Convexity.TRUE)
    if dom.n == 1:
        gap = _interval_gap(dom)
        if gap is not None:
            return LogConvexity(Convexity.FALSE, gap)
        return LogConvexity(Convexity.TRUE)
    vertices = sorted({v for cell in dom.cells for v in cell.vdata.vertices})
    witness = _midpoint_witness(dom, vertices)
    if witness is not None:
        return LogConvexity(Convexity.FALSE, witness)
    if dom.n == 2:
        witness = _arrangement_witness(dom)
        if witness is not None:
            return LogConvexity(Convexity.FALSE, witness)
        return LogConvexity(Convexity.TRUE)
    rng = SplitMix64(seed)
    for _ in range(samples):
        p = interior_point(rng, rng.choice(dom.cells).vdata)
        q = interior_point(rng, rng.choice(dom.cells).vdata)
        mid = tuple((a + b) / 2 for a, b in zip(p, q))
        if not _in_union(dom, mid):
            return LogConvexity(Convexity.FALSE, mid)
    logger.debug(f"{dom!r}: no witness in {samples} midpoints")
    return LogConvexity(Convexity.UNFALSIFIED, samples=samples)


class DohStatus(Enum):
    DOH = "doh"
    NOT_DOH = "not_doh"
    INCONCLUSIVE = "inconclusive"


@dataclass
class DohCertificate:
    status: DohStatus
    log_convexity: LogConvexity
    axis_failures: List[int] = field(default_factory=list)

    @property
    def is_doh(self) -> bool:
        return self.status is DohStatus.DOH

    def to_json(self):
        out = {
            "status": self.status.value,
            "log_convexity": self.log_convexity.to_json(),
        }
        failed = []
        if self.log_convexity.status is Convexity.FALSE:
            failed.append("log_convexity")
        if self.axis_failures:
            failed.append("axis")
            out["axis_failures"] = [j + 1 for j in self.axis_failures]
        out["failed"] = failed
        return out


def _axis_mismatches(dom: ReinhardtDomain) -> List[int]:
    return [
        j for j in range(dom.n) if dom.axis_meets[j] != (j in dom.receding)
    ]


def is_doh(dom: ReinhardtDomain, samples=200, seed=0) -> DohCertificate:
    """
    Log-convex, and meeting axis j exactly when some cell recedes along
    -e_j.
    """
    convexity = is_log_convex(dom, samples, seed)
    failures = _axis_mismatches(dom)
    if convexity.status is Convexity.FALSE or failures:
        status = DohStatus.NOT_DOH
    elif convexity.status is Convexity.UNFALSIFIED:
        status = DohStatus.INCONCLUSIVE
    else:
        status = DohStatus.DOH
    return DohCertificate(status, convexity, failures)


def _rows_to_json(rows):
    return [{"a": format_point(a), "b": format_rational(b)} for a, b in rows]


@dataclass
class EnvelopeResult:
    hull: VData
    axis_meets: Tuple[bool, ...]
    hrep: Optional[HPolytope] = None
    certificate: Optional[DohCertificate] = None

    def as_domain(self) -> ReinhardtDomain:
        if self.hrep is None:
            raise UnsupportedError(
                f"no H-representation in dimension {self.hull.dim}"
            )
        return ReinhardtDomain(
            self.hull.dim, [Cell(self.hrep, self.hull.rays)], self.axis_meets
        )

    def to_json(self):
        out = {
            "vertices": [format_point(v) for v in self.hull.vertices],
            "rays": [j + 1 for j in self.hull.rays],
            "axis_meets": list(self.axis_meets),
        }
        if self.hrep is not None:
            out["hrep"] = _rows_to_json(self.hrep.rows)
            out["facets"] = _rows_to_json(facet_rows(self.hull))
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def envelope(dom: ReinhardtDomain) -> EnvelopeResult:
    """
    log of the envelope is conv(log dom); it meets an axis exactly when
    dom does.
    """
    hull = extreme_points(dom.hull)
    for cell in dom.cells:
        for v in cell.vdata.vertices:
            if not hull_membership(hull, v):
                raise InvariantViolation(
                    f"vertex {format_point(v)} left the hull"
                )
    result = EnvelopeResult(hull, dom.axis_meets)
    if dom.n > MAX_FACET_DIM:
        logger.verbose(f"skipping facets in dimension {dom.n}")
        return result
    result.hrep = facets(VData(dom.hull.vertices, (), dom.n))
    result.certificate = is_doh(result.as_domain())
    consistent = not _axis_mismatches(dom)
    if consistent and not result.certificate.is_doh:
        raise InvariantViolation(
            f"envelope of {dom!r} is not a domain of holomorphy"
        )
    if not consistent:
        logger.warning(
            "domain recedes along an axis it does not meet; "
            "its envelope keeps the same flags"
        )
    return result


def _require_inside(A: ReinhardtDomain, D: ReinhardtDomain, where=""):
    if A.n != D.n:
        raise ConvCrossInputError(
            f"{where}A has dimension {A.n}, D has {D.n}"
        )
    for i, cell in enumerate(A.cells):
        if not cell.ext <= D.receding:
            raise ConvCrossInputError(
                f"{where}A cell {i + 1} recedes where D does not"
            )
        for v in cell.vdata.vertices:
            if not any(contains(d, v) for d in D.cells):
                raise ConvCrossInputError(
                    f"{where}A cell {i + 1} vertex {format_point(v)} "
                    "is not in D"
                )
    for j in range(A.n):
        if A.axis_meets[j] and not D.axis_meets[j]:
            raise ConvCrossInputError(
                f"{where}A meets axis {j + 1} but D does not"
            )


def _require_doh(D: ReinhardtDomain, where=""):
    cert = is_doh(D)
    if cert.status is DohStatus.NOT_DOH:
        failed = cert.to_json()["failed"]
        raise ConvCrossInputError(
            f"{where}D is not a domain of holomorphy: {failed}"
        )
    if cert.status is DohStatus.INCONCLUSIVE:
        logger.warning(f"{where}log-convexity of D is unfalsified, not proven")


def log_problem(A: ReinhardtDomain, D: ReinhardtDomain) -> ExtremalProblem:
    """(conv log A, conv log D) as an extremal problem."""
    return ExtremalProblem.from_vdata(
        extreme_points(A.hull), extreme_points(D.hull)
    )


@lru_cache(maxsize=128)
def _hstar_problem(A: ReinhardtDomain, D: ReinhardtDomain) -> ExtremalProblem:
    return ExtremalProblem.from_vdata(A.hull, D.hull)


def h_star(
    A: ReinhardtDomain,
    D: ReinhardtDomain,
    p,
    accept_inexact=False,
    validated=False,
) -> Fraction:
    """
    The regularized relative extremal function of A in D at p. With
    `validated` the caller vouches that A lies in D and D is a DOH.
    """
    p = as_log_point(p)
    if not p.finite:
        raise UnsupportedError(
            f"h* is only evaluated off the axes; coordinates "
            f"{sorted(j + 1 for j in p.axes)} vanish"
        )
    if not p.exact and not accept_inexact:
        raise UnsupportedError(
            "point was derived from decimal moduli; pass accept_inexact "
            "to evaluate it anyway"
        )
    if not validated:
        _require_inside(A, D)
        _require_doh(D)
    return phi(_hstar_problem(A, D), p.coords)


class ReinhardtCross:
    def __init__(
        self, blocks: Sequence[Tuple[ReinhardtDomain, ReinhardtDomain]]
    ):
        if len(blocks) < 2:
            raise ConvCrossInputError(
                f"a cross needs at least two blocks, got {len(blocks)}"
            )
        for j, (A, D) in enumerate(blocks):
            _require_inside(A, D, f"block {j + 1}: ")
            _require_doh(D, f"block {j + 1}: ")
        self.blocks = tuple(blocks)

    @cached_property
    def log_spec(self) -> CrossSpec:
        return CrossSpec(
            [
                CrossFactor.from_problem(log_problem(A, D))
                for A, D in self.blocks
            ]
        )

    def split(self, p) -> List[LogPoint]:
        p = as_log_point(p)
        out, offset = [], 0
        for A, _ in self.blocks:
            out.append(LogPoint(p.coords[offset : offset + A.n], p.exact))
            offset += A.n
        if offset != p.dim:
            raise ConvCrossInputError(
                f"point has dimension {p.dim}, expected {offset}"
            )
        return out

    def __repr__(self):
        return f"ReinhardtCross(N={len(self.blocks)})"


def cross_contains(x: ReinhardtCross, p) -> bool:
    """p in the union of A_1 x ... x D_j x ... x A_N."""
    parts = x.split(p)
    in_a = [contains_point(A, q) for (A, _), q in zip(x.blocks, parts)]
    for j, ((_, D), q) in enumerate(zip(x.blocks, parts)):
        if not all(in_a[k] for k in range(len(parts)) if k != j):
            continue
        if contains_point(D, q):
            return True
    return False


@dataclass
class ReinhardtCrossReport:
    cross: CrossReport
    hstar_checked: int = 0
    axis_checks: List[dict] = field(default_factory=list)
    violations: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cross.passed and not self.violations

    def to_json(self):
        out = self.cross.to_json()
        out["hstar_checked"] = self.hstar_checked
        out["axis_checks"] = list(self.axis_checks)
        out["violations"] = self.cross.violations + self.violations
        return out


def axis_witnesses(x: ReinhardtCross):
    """
    For every axis i met by D_j: A-barycenters in the other blocks and
    an axis point of D_j in block j.
    """
    centers = [A.cells[0].barycenter for A, _ in x.blocks]
    for j, (_, D) in enumerate(x.blocks):
        for i in range(D.n):
            if not D.axis_meets[i]:
                continue
            cell = next(c for c in D.cells if i in c.ext)
            a = tuple(
                NEG_INF if k == i else v
                for k, v in enumerate(cell.barycenter)
            )
            coords = tuple(
                v
                for k, c in enumerate(centers)
                for v in (a if k == j else c)
            )
            yield j, i, LogPoint(coords)


def cross_envelope_verify(
    x: ReinhardtCross, num_samples: int, seed: int
) -> ReinhardtCrossReport:
    spec = x.log_spec
    sampler = CrossSampler(
        [f.extremal for f in spec.factors], SplitMix64(seed)
    )
    report = ReinhardtCrossReport(CrossReport())
    logger.info(f"Verifying {x!r} on {num_samples} samples (seed {seed})")
    for index in range(num_samples):
        kind, point = sampler.sample()
        report.cross.samples += 1
        report.cross.kinds[kind] = report.cross.kinds.get(kind, 0) + 1
        tri = check_sample(spec, report.cross, index, kind, point)
        if tri is None:
            continue
        try:
            total = sum(
                (h_value(x, j, q) for j, q in enumerate(x.split(point))), ZERO
            )
        except DomainError:
            continue
        report.hstar_checked += 1
        if total != tri.phi_sum:
            report.violations.append(
                {
                    "sample": index,
                    "point": format_point(point),
                    "reason": "h* sum differs from the sum of Phi",
                    "hstar_sum": format_rational(total),
                    "phi_sum": format_rational(tri.phi_sum),
                }
            )
        elif (total < 1) != (tri.w_class is WClass.INSIDE):
            report.violations.append(
                {
                    "sample": index,
                    "point": format_point(point),
                    "reason": "h* sum disagrees with the hull class",
                    "hstar_sum": format_rational(total),
                    "class": tri.w_class.value,
                }
            )
    for j, i, witness in axis_witnesses(x):
        member = cross_contains(x, witness)
        report.axis_checks.append(
            {
                "block": j + 1,
                "axis": i + 1,
                "witness": witness.to_json(),
                "member": member,
            }
        )
        if not member:
            report.violations.append(
                {
                    "reason": "axis witness outside the cross",
                    "block": j + 1,
                    "axis": i + 1,
                    "witness": witness.to_json(),
                }
            )
    return report


def h_value(x: ReinhardtCross, j: int, q: LogPoint) -> Fraction:
    """h* of block j; the blocks were validated when x was built."""
    A, D = x.blocks[j]
    return h_star(A, D, q, validated=True)
