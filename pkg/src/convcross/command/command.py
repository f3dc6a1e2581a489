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

import importlib
import inspect
import logging
import pkgutil

from collections import defaultdict

import convcross.ext.commands

from convcross.exceptions import ConvCrossInputError


commands_loaded = False


def load():
    """Imports every module under convcross.ext.commands once."""
    global commands_loaded
    if commands_loaded:
        return
    package = convcross.ext.commands
    for _, name, _ in pkgutil.iter_modules(package.__path__):
        try:
            importlib.import_module(f"{package.__name__}.{name}")
        except Exception as e:
            logging.getLogger(__name__).exception(
                f"Could not load command module '{name}': {e}"
            )
    commands_loaded = True


class ICommand:
    """
    Base class for commands. Subclasses set NAME ("group action") and
    implement `run`, which fills the report and returns True when
    every check passed.
    """

    NAME = None

    def __init__(self, config):
        self.config = config
        self.logger = logging.getLogger(__name__)

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.NAME is not None:
            Commands.registered[cls.NAME] = cls

    def require(self, name):
        value = getattr(self.config, name, None)
        if value is None:
            raise ConvCrossInputError(
                f"'{self.NAME}' needs --{name}"
            )
        return value

    def run(self, report) -> bool:
        raise NotImplementedError


class Commands:
    registered = {}

    @classmethod
    def names(cls):
        load()
        return sorted(cls.registered)

    @classmethod
    def groups(cls):
        return sorted({name.split()[0] for name in cls.names()})

    @classmethod
    def get(cls, name):
        load()
        return cls.registered.get(name, None)


class CommandFlags:
    registered_flags = defaultdict(dict)

    def __init__(self, argparser):
        self.logger = logging.getLogger(__name__)
        load()

        self._added_flags = {}
        for source_file, flags in sorted(self.registered_flags.items()):
            module = inspect.getmodulename(source_file) or source_file
            arg_group = argparser.add_argument_group(f"{module} commands")
            self.add_flags(source_file, flags, arg_group)

    def add_flags(self, source_file_name, flags_dict, argparser):
        for name, args in flags_dict.items():
            if name in self._added_flags:
                self.logger.warning(
                    f"Skipped flag {name} from {source_file_name}, "
                    f"already defined in {self._added_flags[name]}"
                )
                continue
            argparser.add_argument(f"--{name}", **args)
            self._added_flags[name] = source_file_name


class CommandLineOption:
    """
    Registers a command line option contributed by a command module.
    The kwargs are those recognized by argparse.
    """

    def __init__(self, name, **kwargs):
        frame = inspect.stack()[1]
        CommandFlags.registered_flags[frame.filename][name] = kwargs
