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

import logging
import sys

import verboselogs

from termcolor import colored

from convcross.command import Commands
from convcross.config_gen import generate_config_from_cmdline
from convcross.exceptions import (
    ConvCrossInputError,
    DomainError,
    InvariantViolation,
    UnsupportedError,
)
from convcross.report import Report
from convcross.util import Timer


EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT_ERROR = 2


class Engine:
    """Runs one configured command and writes its report."""

    def __init__(self, config):
        self.config = config
        self._init_logging(config.log.upper())

    def _init_logging(self, initial_log_level):
        verboselogs.install()
        # This will be the parent to all loggers in this project.
        logger = verboselogs.logging.getLogger("convcross")
        fmt = "{asctime}:{module:_<10.10s}:{levelname:_<6.6s}:{message}"
        datefmt = "%H:%M:%S"
        try:
            import coloredlogs

            coloredlogs.install(
                logger=logger,
                level=initial_log_level,
                fmt=fmt,
                datefmt=datefmt,
                style="{",
                stream=sys.stderr,
            )
        except ModuleNotFoundError:
            logger.error("You do not have the required coloredlogs dependency")
            console = verboselogs.logging.StreamHandler(sys.stderr)
            formatter = verboselogs.logging.Formatter(fmt, datefmt, style="{")
            console.setFormatter(formatter)
            logger.addHandler(console)
            logger.setLevel(initial_log_level)

        self.logger = logger

    def execute(self) -> Report:
        """
        Runs the command. Returns the report and sets `exit_code`;
        input errors propagate to the caller.
        """
        command_class = Commands.get(self.config.command)
        command = command_class(self.config)
        report = Report(self.config.command, self.config)
        timer = Timer()
        timer.begin()
        try:
            passed = command.run(report)
        except InvariantViolation as e:
            self.logger.error(f"Internal check failed: {e}")
            report.violations.append(
                {"reason": "invariant violation", "message": str(e)}
            )
            passed = False
        if self.config.timing:
            report.timing_ms = timer.elapsed_ms()
        if passed and not report.violations:
            self.exit_code = EXIT_PASS
        else:
            self.exit_code = EXIT_COUNTEREXAMPLE
        return report

    def run(self) -> int:
        try:
            report = self.execute()
        except (ConvCrossInputError, DomainError, UnsupportedError) as e:
            self.logger.error(str(e))
            self._summary("INPUT ERROR", "yellow", str(e))
            return EXIT_INPUT_ERROR
        try:
            report.write(self.config.out)
        except OSError as e:
            message = f"cannot write {self.config.out}: {e.strerror}"
            self.logger.error(message)
            self._summary("INPUT ERROR", "yellow", message)
            return EXIT_INPUT_ERROR
        if self.exit_code == EXIT_PASS:
            self._summary("PASS", "green", self.config.command)
        else:
            count = len(report.violations)
            self._summary(
                "FAIL", "red", f"{self.config.command}: {count} violation(s)"
            )
        return self.exit_code

    def _summary(self, label, color, message):
        label = colored(label, color, attrs=["bold"])
        print(f"{label} {message}", file=sys.stderr)


def run_cmdline(argv) -> int:
    config = generate_config_from_cmdline(argv)
    return Engine(config).run()
