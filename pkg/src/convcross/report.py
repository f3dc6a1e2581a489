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
Report assembly. Reports are written with sorted keys and exact
rational strings so that equal configurations give equal bytes.
"""

import json
import logging
import sys

from fractions import Fraction
from typing import Optional


logger = logging.getLogger(__name__)

# Config fields echoed into every report.
REPORTED_FIELDS = (
    "spec",
    "domain",
    "A",
    "D",
    "points",
    "moduli",
    "samples",
    "seed",
    "truncation",
    "precision",
    "mu",
)


def _plain(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


class Report:
    def __init__(self, command: str, config=None):
        self.command = command
        self.config = {}
        if config is not None:
            for name in REPORTED_FIELDS:
                if hasattr(config, name):
                    self.config[name] = _plain(getattr(config, name))
        self.results = {}
        self.violations = []
        self.timing_ms: Optional[int] = None

    def to_json(self):
        return {
            "command": self.command,
            "config": self.config,
            "results": _plain(self.results),
            "violations": _plain(self.violations),
            "timing_ms": self.timing_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def write(self, path=None):
        text = self.dumps()
        if path is None:
            sys.stdout.write(text)
            return
        with open(path, "w") as f:
            f.write(text)
        logger.verbose(f"Report written to {path}")
