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

import argparse

from fractions import Fraction

import configargparse

from convcross.command import CommandFlags, Commands


LOG_LEVELS = (
    "info",
    "verbose",
    "debug",
    "spam",
    "notice",
    "warning",
    "success",
    "error",
    "fatal",
)

SEED_LIMIT = 1 << 64


def seed_type(value):
    try:
        seed = int(value, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {value!r}")
    if not 0 <= seed < SEED_LIMIT:
        raise argparse.ArgumentTypeError(
            "seed must be an unsigned 64-bit integer"
        )
    return seed


def positive_rational(value):
    try:
        q = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid rational {value!r}")
    if q <= 0:
        raise argparse.ArgumentTypeError(f"{value} must be positive")
    return q


def positive_int(value):
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid count {value!r}")
    if n <= 0:
        raise argparse.ArgumentTypeError(f"{value} must be positive")
    return n


def generate_config(command: str, **kwargs):
    """
    Generates a config for `command` ("phi eval", "cross verify", ...)
    from keyword arguments named like the command line flags.

    Args:
        command: Command group and action separated by a space.
        kwargs: Additional options corresponding to command line flags.

    Returns:
        Config that can be passed to the Engine.
    """
    argv = command.split()
    for k, v in kwargs.items():
        if v is False or v is None:
            continue
        if v is True:
            argv.append(f"--{k}")
        else:
            argv.append(f"--{k}={v}")
    return generate_config_from_cmdline(argv)


def generate_parser():
    parser = configargparse.ArgumentParser(
        prog="convcross",
        description="Exact convex extremal functions, convex crosses and "
        "Reinhardt envelopes.",
    )
    group_logging = parser.add_argument_group("logging")
    group_inputs = parser.add_argument_group("inputs")
    group_sampling = parser.add_argument_group("sampling")
    group_reporting = parser.add_argument_group("reporting")
    parser.add("-c", "--config", is_config_file=True, help="config file path")
    group_logging.add_argument(
        "--log",
        type=str,
        choices=LOG_LEVELS,
        default="info",
        help="Decide what level of logging should be used. (default: 'info')",
    )
    group_inputs.add_argument(
        "--spec",
        type=str,
        default=None,
        help="Problem file: an extremal problem for 'phi', a cross for "
        "'cross verify' and a Reinhardt cross for 'reinhardt cross-verify'.",
    )
    group_inputs.add_argument(
        "--domain",
        type=str,
        default=None,
        help="Reinhardt domain file for 'reinhardt doh' and "
        "'reinhardt envelope'.",
    )
    group_inputs.add_argument(
        "--A",
        dest="A",
        type=str,
        default=None,
        help="Reinhardt domain file of the small set A for 'reinhardt hstar'.",
    )
    group_inputs.add_argument(
        "--D",
        dest="D",
        type=str,
        default=None,
        help="Reinhardt domain file of the domain D for 'reinhardt hstar'.",
    )
    group_inputs.add_argument(
        "--points",
        type=str,
        default=None,
        help="JSON file with a list of points, or an object with a "
        "'points' list.",
    )
    group_inputs.add_argument(
        "--moduli",
        action="store_true",
        help="Read --points as decimal moduli |z_j| instead of exact "
        "log-coordinates. Results derived from them are approximate.",
    )
    group_sampling.add_argument(
        "--samples",
        type=positive_int,
        default=200,
        help="Number of samples drawn by verification campaigns. "
        "(default: 200)",
    )
    group_sampling.add_argument(
        "--seed",
        type=seed_type,
        default=0,
        help="Unsigned 64-bit seed. Equal seeds give identical reports. "
        "(default: 0)",
    )
    group_sampling.add_argument(
        "--truncation",
        type=positive_rational,
        default=Fraction(64),
        help="Log-space depth M at which cells reaching an axis are cut "
        "off. (default: 64)",
    )
    group_reporting.add_argument(
        "--precision",
        type=positive_int,
        default=30,
        help="Decimal digits used when converting moduli. (default: 30)",
    )
    group_reporting.add_argument(
        "--out",
        type=str,
        default=None,
        help="Write the JSON report to OUT instead of stdout.",
    )
    group_reporting.add_argument(
        "--timing",
        action="store_true",
        help="Record wall clock time in the report. Reports are then no "
        "longer byte-identical between runs.",
    )

    _ = CommandFlags(parser)

    parser.add_argument(
        "group", type=str, choices=Commands.groups(), help="Command group"
    )
    parser.add_argument("action", type=str, help="Command within the group")
    return parser


def generate_config_from_cmdline(argv):
    parser = generate_parser()
    config = parser.parse_args(argv)
    config.command = f"{config.group} {config.action}"
    if Commands.get(config.command) is None:
        parser.error(
            f"unknown command '{config.command}'; choose from "
            + ", ".join(Commands.names())
        )
    return config
