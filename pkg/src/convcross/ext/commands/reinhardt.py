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
from convcross.reinhardt import (
    DohStatus,
    cross_envelope_verify,
    envelope,
    h_star,
    is_doh,
)
from convcross.schema import (
    domain_to_json,
    load_json,
    parse_domain,
    parse_log_points,
    parse_reinhardt_cross,
)
from convcross.util import format_rational


class ReinhardtCommand(ICommand):
    def domain(self, name):
        return parse_domain(
            load_json(self.require(name)), truncation=self.config.truncation
        )


class Doh(ReinhardtCommand):
    """Domain of holomorphy test with a certificate."""

    NAME = "reinhardt doh"

    def run(self, report) -> bool:
        dom = self.domain("domain")
        cert = is_doh(dom, self.config.samples, self.config.seed)
        report.results["certificate"] = cert.to_json()
        if cert.status is DohStatus.INCONCLUSIVE:
            self.logger.warning(
                "log-convexity was not falsified but is not proven in "
                f"dimension {dom.n}"
            )
        if cert.status is DohStatus.NOT_DOH:
            report.violations.append(
                dict(cert.to_json(), reason="not a domain of holomorphy")
            )
            return False
        return True


class Envelope(ReinhardtCommand):
    """Log-image and axis flags of the envelope of holomorphy."""

    NAME = "reinhardt envelope"

    def run(self, report) -> bool:
        result = envelope(self.domain("domain"))
        report.results["envelope"] = result.to_json()
        if result.hrep is not None:
            report.results["domain"] = domain_to_json(result.as_domain())
        return True


class HStar(ReinhardtCommand):
    """h*_{A,D} at every point of --points."""

    NAME = "reinhardt hstar"

    def run(self, report) -> bool:
        A, D = self.domain("A"), self.domain("D")
        points = parse_log_points(
            load_json(self.require("points")),
            moduli=self.config.moduli,
            precision=self.config.precision,
        )
        values = []
        for p in points:
            value = h_star(A, D, p, accept_inexact=self.config.moduli)
            entry = {"point": p.to_json(), "value": format_rational(value)}
            if not p.exact:
                entry["approximate"] = True
            values.append(entry)
        report.results["values"] = values
        return True


class CrossEnvelopeVerify(ReinhardtCommand):
    """Envelope of a Reinhardt cross against the h* sum and the axis rule."""

    NAME = "reinhardt cross-verify"

    def run(self, report) -> bool:
        x = parse_reinhardt_cross(
            load_json(self.require("spec")), truncation=self.config.truncation
        )
        result = cross_envelope_verify(
            x, self.config.samples, self.config.seed
        )
        json_result = result.to_json()
        report.violations.extend(json_result.pop("violations"))
        report.results["campaign"] = json_result
        return result.passed
