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

from fractions import Fraction

from convcross.command import CommandLineOption, ICommand
from convcross.extremal import phi_dual, phi_gauge, verify_remark22
from convcross.generators import grid_point
from convcross.schema import (
    load_json,
    parse_chain,
    parse_points,
    parse_problem,
)
from convcross.util import (
    SplitMix64,
    format_point,
    format_rational,
    parse_rational,
)


CommandLineOption(
    "mu",
    type=str,
    default="1/2",
    help="Level mu in (0, 1) of the sublevel rescaling check in "
    "'phi verify'. (default: 1/2)",
)


class PhiCommand(ICommand):
    def load(self):
        data = load_json(self.require("spec"))
        prob = parse_problem(data)
        points = []
        if "points" in data:
            points = parse_points(data["points"])
        if self.config.points is not None:
            points += parse_points(load_json(self.config.points))
        return data, prob, points


class PhiEval(PhiCommand):
    """Evaluates Phi at every point by both LP routes."""

    NAME = "phi eval"

    def run(self, report) -> bool:
        _, prob, points = self.load()
        values = []
        for x in points:
            x = prob.require_interior(x)
            value, witness = phi_dual(prob, x, known_interior=True)
            gauge = phi_gauge(prob, x, known_interior=True)
            entry = {
                "point": format_point(x),
                "value": format_rational(value),
                "witness": witness.to_json(),
            }
            if gauge != value:
                report.violations.append(
                    dict(
                        entry,
                        reason="Phi formulations disagree",
                        gauge=format_rational(gauge),
                    )
                )
            values.append(entry)
        report.results["values"] = values
        self.logger.info(f"Evaluated Phi at {len(values)} points")
        return True


class PhiVerify(PhiCommand):
    """Property checks at given or sampled interior points."""

    NAME = "phi verify"

    def run(self, report) -> bool:
        data, prob, points = self.load()
        mu = parse_rational(self.config.mu, "--mu")
        if not points:
            rng = SplitMix64(self.config.seed)
            samples = self.config.samples
            points = [grid_point(rng, prob) for _ in range(samples)]
        chain = parse_chain(data["chain"]) if "chain" in data else None
        cloud = parse_points(data["cloud"], "cloud") if "cloud" in data else ()
        gap_bound = None
        if "gap_bound" in data:
            gap_bound = parse_rational(data["gap_bound"], "gap_bound")
        result = verify_remark22(prob, mu, points, chain, cloud, gap_bound)
        report.results["properties"] = result.to_json()
        report.results["points"] = len(points)
        report.violations.extend(result.violations())
        return result.passed
