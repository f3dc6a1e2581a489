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

import json
import logging
import tempfile
import unittest

from os import path

from convcross.config_gen import generate_config
from convcross.engine import (
    EXIT_COUNTEREXAMPLE,
    EXIT_INPUT_ERROR,
    EXIT_PASS,
    Engine,
    run_cmdline,
)


DATA_DIR = path.join(path.dirname(path.abspath(__file__)), "data")


def data(name):
    return path.join(DATA_DIR, name)


class CommandLineTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def run_report(self, *argv, name="report.json"):
        out = path.join(self.tmp, name)
        code = run_cmdline(list(argv) + [f"--out={out}"])
        if not path.exists(out):
            return code, None
        with open(out) as f:
            return code, json.load(f)

    def test_phi_eval(self):
        code, report = self.run_report(
            "phi", "eval", f"--spec={data('phi_1d.json')}"
        )
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(report["command"], "phi eval")
        (entry,) = report["results"]["values"]
        self.assertEqual(entry["point"], ["1/2"])
        self.assertEqual(entry["value"], "1/2")
        self.assertIsNone(report["timing_ms"])
        self.assertEqual(report["violations"], [])

    def test_phi_verify(self):
        code, report = self.run_report(
            "phi", "verify", f"--spec={data('square.json')}", "--mu=1/3"
        )
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(report["results"]["points"], 4)
        self.assertEqual(report["config"]["mu"], "1/3")

    def test_phi_verify_point_cloud(self):
        code, report = self.run_report(
            "phi", "verify", f"--spec={data('phi_1d.json')}"
        )
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(report["results"]["points"], 1)

    def test_cross_verify(self):
        config = generate_config(
            "cross verify", spec=data("diamond.json"), samples=40, seed=5
        )
        engine = Engine(config)
        report = engine.execute()
        self.assertEqual(engine.exit_code, EXIT_PASS)
        self.assertEqual(report.results["campaign"]["samples"], 40)

    def test_cross_verify_given_points(self):
        code, report = self.run_report(
            "cross",
            "verify",
            f"--spec={data('diamond.json')}",
            f"--points={data('diamond_points.json')}",
            "--samples=10",
        )
        self.assertEqual(code, EXIT_PASS)
        given = report["results"]["given"]
        self.assertEqual(given["samples"], 4)
        self.assertEqual(
            given["classes"], {"inside": 2, "boundary": 1, "outside": 1}
        )

    def test_reproducible(self):
        argv = [
            "cross",
            "verify",
            f"--spec={data('diamond.json')}",
            "--samples=30",
            "--seed=0x2a",
        ]
        run_cmdline(argv + [f"--out={path.join(self.tmp, 'a.json')}"])
        run_cmdline(argv + [f"--out={path.join(self.tmp, 'b.json')}"])
        with open(path.join(self.tmp, "a.json"), "rb") as a, open(
            path.join(self.tmp, "b.json"), "rb"
        ) as b:
            self.assertEqual(a.read(), b.read())

    def test_timing(self):
        code, report = self.run_report(
            "phi", "eval", f"--spec={data('phi_1d.json')}", "--timing"
        )
        self.assertEqual(code, EXIT_PASS)
        self.assertIsInstance(report["timing_ms"], int)

    def test_doh_counterexample(self):
        code, report = self.run_report(
            "reinhardt", "doh", f"--domain={data('lshape.json')}"
        )
        self.assertEqual(code, EXIT_COUNTEREXAMPLE)
        cert = report["results"]["certificate"]
        self.assertEqual(cert["status"], "not_doh")
        self.assertEqual(cert["log_convexity"]["witness"], ["-1/2", "-1/2"])
        self.assertEqual(len(report["violations"]), 1)

    def test_envelope(self):
        code, report = self.run_report(
            "reinhardt", "envelope", f"--domain={data('hartogs.json')}"
        )
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(
            report["results"]["envelope"]["vertices"], [["0", "0"]]
        )
        self.assertEqual(
            report["results"]["domain"]["axis_meets"], [True, True]
        )

    def test_hstar(self):
        code, report = self.run_report(
            "reinhardt",
            "hstar",
            f"--A={data('disc_A.json')}",
            f"--D={data('disc_D.json')}",
            f"--points={data('disc_points.json')}",
        )
        self.assertEqual(code, EXIT_PASS)
        values = [e["value"] for e in report["results"]["values"]]
        self.assertEqual(values, ["1/2", "0", "0"])

    def test_hstar_moduli(self):
        code, report = self.run_report(
            "reinhardt",
            "hstar",
            f"--A={data('disc_A.json')}",
            f"--D={data('disc_D.json')}",
            f"--points={data('disc_moduli.json')}",
            "--moduli",
        )
        self.assertEqual(code, EXIT_PASS)
        entries = report["results"]["values"]
        self.assertTrue(all(e["approximate"] for e in entries))
        self.assertEqual(entries[1]["value"], "0")

    def test_cross_envelope_verify(self):
        code, report = self.run_report(
            "reinhardt",
            "cross-verify",
            f"--spec={data('disc_cross.json')}",
            "--samples=20",
        )
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(len(report["results"]["campaign"]["axis_checks"]), 2)

    def test_input_errors(self):
        bad = path.join(self.tmp, "bad.json")
        with open(bad, "w") as f:
            json.dump(
                {
                    "S": {"points": [[0.5]]},
                    "U": {"lower": [-1], "upper": [1]},
                },
                f,
            )
        code, report = self.run_report("phi", "eval", f"--spec={bad}")
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertIsNone(report)
        code, _ = self.run_report(
            "phi", "verify", f"--spec={data('phi_1d.json')}", "--mu=1/0"
        )
        self.assertEqual(code, EXIT_INPUT_ERROR)
        code, _ = self.run_report("cross", "verify")
        self.assertEqual(code, EXIT_INPUT_ERROR)

    def test_phi_verify_gap_bound(self):
        spec = path.join(self.tmp, "gap.json")
        with open(spec, "w") as f:
            json.dump(
                {
                    "S": [{"lower": ["-1/4"], "upper": ["1/4"]}],
                    "U": {"lower": ["-1"], "upper": ["1"]},
                    "points": [["11/16"], ["-1/2"]],
                    "gap_bound": "1/20",
                },
                f,
            )
        code, report = self.run_report("phi", "verify", f"--spec={spec}")
        self.assertEqual(code, EXIT_COUNTEREXAMPLE)
        e = report["results"]["properties"]["e"]
        self.assertEqual(e["final_gap"], "11/180")
        self.assertFalse(e["pass"])

    def test_unwritable_report(self):
        out = path.join(self.tmp, "missing", "report.json")
        code = run_cmdline(
            ["phi", "eval", f"--spec={data('phi_1d.json')}", f"--out={out}"]
        )
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertFalse(path.exists(out))

    def test_log_level(self):
        config = generate_config("phi eval", log="debug")
        engine = Engine(config)
        self.assertLessEqual(engine.logger.getEffectiveLevel(), logging.DEBUG)

    def test_outside_point(self):
        points = path.join(self.tmp, "points.json")
        with open(points, "w") as f:
            json.dump([["1"]], f)
        code, _ = self.run_report(
            "phi",
            "eval",
            f"--spec={data('phi_1d.json')}",
            f"--points={points}",
        )
        self.assertEqual(code, EXIT_INPUT_ERROR)

    def test_usage_errors(self):
        for argv in (
            ["phi", "nope"],
            ["nope", "eval"],
            ["cross", "verify", "--seed=-1"],
            ["cross", "verify", "--samples=0"],
            ["phi", "eval", "--log=loud"],
        ):
            with self.assertRaises(SystemExit) as ctx:
                run_cmdline(argv)
            self.assertEqual(ctx.exception.code, 2)


def main():
    unittest.main()


if __name__ == "__main__":
    main()
