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

from convcross.command import ICommand
from convcross.cross import CrossReport, check_sample, verify_prop24
from convcross.schema import load_json, parse_cross_spec, parse_points


class CrossVerify(ICommand):
    """Seeded check of conv(T) = {sum Phi_j < 1} on a cross."""

    NAME = "cross verify"

    def run(self, report) -> bool:
        spec = parse_cross_spec(load_json(self.require("spec")))
        result = verify_prop24(spec, self.config.samples, self.config.seed)
        if self.config.points is not None:
            given = CrossReport()
            points = parse_points(load_json(self.config.points))
            for index, x in enumerate(points):
                given.samples += 1
                check_sample(spec, given, index, "given", x)
            report.results["given"] = given.to_json()
            report.violations.extend(given.violations)
        report.results["campaign"] = result.to_json()
        report.violations.extend(result.violations)
        return result.passed
