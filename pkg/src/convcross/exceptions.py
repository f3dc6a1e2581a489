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


class ConvCrossException(Exception):
    pass


class ConvCrossInputError(ConvCrossException):
    """
    Malformed input. `location` is a JSON path such as
    ``factors[0].U.rows[2].b`` when the error comes from a file.
    """

    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class LPInputError(ConvCrossInputError):
    pass


class GeometryError(ConvCrossInputError):
    pass


class DomainError(ConvCrossException):
    pass


class UnsupportedError(ConvCrossException):
    pass


class InvariantViolation(ConvCrossException):
    pass
