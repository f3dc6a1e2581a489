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
JSON codecs. Every parse error names the JSON path it came from, e.g.
``factors[1].U.rows[0].b: malformed rational '1/0'``. Coordinate
indices are 1-based in JSON.
"""

import json
import logging

from convcross.cross import CrossFactor, CrossSpec
from convcross.exceptions import ConvCrossInputError, GeometryError
from convcross.extremal import ExtremalProblem
from convcross.polytope import Cell, HPolytope, VData
from convcross.reinhardt import (
    NEG_INF,
    TRUNCATION,
    LogPoint,
    ReinhardtCross,
    ReinhardtDomain,
    log_box,
    log_point,
)
from convcross.util import (
    format_point,
    format_rational,
    parse_point,
    parse_rational,
)


logger = logging.getLogger(__name__)


def load_json(path):
    try:
        with open(path, "r") as f:
            return json.load(f)
    except OSError as e:
        raise ConvCrossInputError(
            f"cannot read {path}: {e.strerror}"
        ) from None
    except json.JSONDecodeError as e:
        raise ConvCrossInputError(
            f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", path
        ) from None


def _at(loc, key):
    if isinstance(key, int):
        return f"{loc}[{key}]"
    return f"{loc}.{key}" if loc else key


def _field(obj, key, loc, kind=None):
    if not isinstance(obj, dict):
        raise ConvCrossInputError("expected an object", loc or None)
    if key not in obj:
        raise ConvCrossInputError(f"missing field '{key}'", loc or None)
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ConvCrossInputError(
            f"expected {kind.__name__}, got {type(value).__name__}",
            _at(loc, key),
        )
    return value


def _list(obj, key, loc):
    return _field(obj, key, loc, list)


def _int(obj, key, loc):
    value = _field(obj, key, loc)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConvCrossInputError("expected an integer", _at(loc, key))
    return value


def parse_hpolytope(obj, loc="") -> HPolytope:
    if not isinstance(obj, dict):
        raise ConvCrossInputError("expected an object", loc or None)
    if "lower" in obj and "upper" in obj:
        lower = parse_point(obj["lower"], _at(loc, "lower"))
        upper = parse_point(obj["upper"], _at(loc, "upper"))
        if len(lower) != len(upper):
            raise ConvCrossInputError(
                "box bounds differ in length", loc or None
            )
        try:
            return HPolytope.box(lower, upper)
        except GeometryError as e:
            raise GeometryError(str(e), loc or None) from None
    dim = _int(obj, "dim", loc)
    rows = []
    for i, row in enumerate(_list(obj, "rows", loc)):
        rloc = _at(_at(loc, "rows"), i)
        a = parse_point(_field(row, "a", rloc), _at(rloc, "a"))
        if len(a) != dim:
            raise ConvCrossInputError(
                f"row has {len(a)} coefficients, expected {dim}",
                _at(rloc, "a"),
            )
        b = parse_rational(_field(row, "b", rloc), _at(rloc, "b"))
        rows.append((a, b))
    try:
        return HPolytope(dim, rows)
    except GeometryError as e:
        raise GeometryError(str(e), loc or None) from None


def _axis_indices(values, dim, loc):
    if not isinstance(values, list):
        raise ConvCrossInputError("expected a list of axis indices", loc)
    out = []
    for i, j in enumerate(values):
        if isinstance(j, bool) or not isinstance(j, int) or not 1 <= j <= dim:
            raise ConvCrossInputError(
                f"axis index must be an integer in 1..{dim}, got {j!r}",
                _at(loc, i),
            )
        out.append(j - 1)
    return out


def parse_cell(obj, loc="") -> Cell:
    poly = parse_hpolytope(obj, loc)
    ext = _axis_indices(obj.get("ext", []), poly.dim, _at(loc, "ext"))
    return Cell(poly, ext)


def parse_cells(values, loc="") -> list:
    if isinstance(values, dict):
        return [parse_cell(values, loc)]
    if not isinstance(values, list) or not values:
        raise ConvCrossInputError(
            "expected a nonempty list of cells", loc or None
        )
    return [parse_cell(c, _at(loc, i)) for i, c in enumerate(values)]


def parse_problem(obj, loc="") -> ExtremalProblem:
    """
    {"S": [Cell...], "U": Cell}; S may also be a point cloud
    {"points": [...], "ext": [...]}.
    """
    S = _field(obj, "S", loc)
    U = parse_cell(_field(obj, "U", loc, dict), _at(loc, "U"))
    sloc = _at(loc, "S")
    try:
        if isinstance(S, dict) and "points" in S:
            cloud = parse_points(S["points"], _at(sloc, "points"))
            rays = _axis_indices(S.get("ext", []), U.dim, _at(sloc, "ext"))
            return ExtremalProblem.from_points(cloud, U, rays)
        return ExtremalProblem(parse_cells(S, sloc), U)
    except ConvCrossInputError as e:
        if e.location:
            raise
        raise ConvCrossInputError(str(e), loc or None) from None


def parse_chain(values, loc="chain"):
    if not isinstance(values, list):
        raise ConvCrossInputError("expected a list of problems", loc)
    return [parse_problem(p, _at(loc, i)) for i, p in enumerate(values)]


def parse_points(values, loc="points"):
    if isinstance(values, dict):
        values = _list(values, "points", "")
    if not isinstance(values, list):
        raise ConvCrossInputError("expected a list of points", loc)
    return [parse_point(p, _at(loc, i)) for i, p in enumerate(values)]


def parse_cross_spec(obj, loc="") -> CrossSpec:
    factors = []
    for i, f in enumerate(_list(obj, "factors", loc)):
        floc = _at(_at(loc, "factors"), i)
        prob = parse_problem(f, floc)
        try:
            factors.append(CrossFactor.from_problem(prob))
        except GeometryError as e:
            raise GeometryError(str(e), floc) from None
    return CrossSpec(factors)


def parse_domain(obj, loc="", truncation=TRUNCATION) -> ReinhardtDomain:
    """
    Either {"n", "cells", "axis_meets"} or the shorthand
    {"log_box": {"lower": [null, "-1"], "upper": ["0", "0"]}} where a
    null lower bound reaches the axis.
    """
    if isinstance(obj, dict) and "log_box" in obj:
        box = _field(obj, "log_box", loc, dict)
        bloc = _at(loc, "log_box")
        lloc = _at(bloc, "lower")
        lower = [
            None if v is None else parse_rational(v, _at(lloc, i))
            for i, v in enumerate(_list(box, "lower", bloc))
        ]
        upper = parse_point(_list(box, "upper", bloc), _at(bloc, "upper"))
        if len(lower) != len(upper):
            raise ConvCrossInputError("box bounds differ in length", bloc)
        try:
            return log_box(lower, upper, truncation)
        except GeometryError as e:
            raise GeometryError(str(e), bloc) from None
    n = _int(obj, "n", loc)
    cells = parse_cells(_field(obj, "cells", loc), _at(loc, "cells"))
    flags = _list(obj, "axis_meets", loc)
    for i, v in enumerate(flags):
        if not isinstance(v, bool):
            raise ConvCrossInputError(
                "expected true or false", _at(_at(loc, "axis_meets"), i)
            )
    try:
        return ReinhardtDomain(n, cells, flags)
    except ConvCrossInputError as e:
        raise ConvCrossInputError(str(e), loc or None) from None


def parse_reinhardt_cross(
    obj, loc="", truncation=TRUNCATION
) -> ReinhardtCross:
    blocks = []
    for i, b in enumerate(_list(obj, "blocks", loc)):
        bloc = _at(_at(loc, "blocks"), i)
        A, D = (
            parse_domain(_field(b, k, bloc, dict), _at(bloc, k), truncation)
            for k in ("A", "D")
        )
        blocks.append((A, D))
    return ReinhardtCross(blocks)


def parse_log_point(values, loc="") -> LogPoint:
    if not isinstance(values, list):
        raise ConvCrossInputError(
            "expected a list of coordinates", loc or None
        )
    coords = []
    for i, v in enumerate(values):
        if isinstance(v, str) and v.strip() == "-inf":
            coords.append(NEG_INF)
        else:
            coords.append(parse_rational(v, _at(loc, i)))
    return LogPoint(tuple(coords))


def parse_log_points(values, loc="points", moduli=False, precision=30):
    if isinstance(values, dict):
        values = _list(values, "points", "")
    if not isinstance(values, list):
        raise ConvCrossInputError("expected a list of points", loc)
    if moduli:
        out = []
        for i, p in enumerate(values):
            if not isinstance(p, list):
                raise ConvCrossInputError(
                    "expected a list of moduli", _at(loc, i)
                )
            try:
                out.append(log_point(p, precision))
            except ConvCrossInputError as e:
                raise ConvCrossInputError(str(e), _at(loc, i)) from None
        return out
    return [parse_log_point(p, _at(loc, i)) for i, p in enumerate(values)]


def hpolytope_to_json(poly: HPolytope):
    return {
        "dim": poly.dim,
        "rows": [
            {"a": format_point(a), "b": format_rational(b)}
            for a, b in poly.rows
        ],
    }


def cell_to_json(cell: Cell):
    out = hpolytope_to_json(cell.poly)
    out["ext"] = sorted(j + 1 for j in cell.ext)
    return out


def domain_to_json(dom: ReinhardtDomain):
    return {
        "n": dom.n,
        "cells": [cell_to_json(c) for c in dom.cells],
        "axis_meets": list(dom.axis_meets),
    }


def vdata_to_json(vdata: VData):
    return {
        "vertices": [format_point(v) for v in vdata.vertices],
        "rays": [j + 1 for j in vdata.rays],
    }
