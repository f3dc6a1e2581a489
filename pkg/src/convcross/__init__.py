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
__version__ = "0.1.0.dev0"

__title__ = "convcross"
__description__ = "Exact convex extremal functions, the convex cross theorem and envelopes of Reinhardt domains."  # noqa: E501
__url__ = "https://github.com/convcross/convcross"
__uri__ = __url__
__doc__ = __description__ + " <" + __uri__ + ">"

__author__ = "The convcross developers"
__email__ = "convcross@users.noreply.github.com"

__license__ = "AGPLv3"
__copyright__ = "Copyright (c) 2026 The convcross developers"

import colorama
import verboselogs


# Modules log at VERBOSE/SPAM/NOTICE, which must exist before import.
verboselogs.install()

from .cross import (  # noqa: E402
    CrossFactor,
    CrossSpec,
    Trichotomy,
    WClass,
    conv_cross_classify,
    cross_membership,
    product_phi_check,
    recursive_phi_sum,
    verify_prop24,
    w_value,
)
from .engine import Engine  # noqa: E402
from .exceptions import (  # noqa: E402
    ConvCrossException,
    ConvCrossInputError,
    DomainError,
    GeometryError,
    InvariantViolation,
    LPInputError,
    UnsupportedError,
)
from .extremal import (  # noqa: E402
    ExtremalProblem,
    phi,
    phi_dual,
    phi_gauge,
    sublevel_vdata,
    verify_remark22,
)
from .polytope import Cell, HPolytope, VData  # noqa: E402
from .ratlp import LPProblem, LPStatus, lp_minimize, lp_solve  # noqa: E402
from .reinhardt import (  # noqa: E402
    NEG_INF,
    LogPoint,
    ReinhardtCross,
    ReinhardtDomain,
    contains_point,
    cross_envelope_verify,
    envelope,
    h_star,
    is_doh,
    is_log_convex,
)


__all__ = [
    "Engine",
    "ConvCrossException",
    "ConvCrossInputError",
    "LPInputError",
    "GeometryError",
    "DomainError",
    "UnsupportedError",
    "InvariantViolation",
    "LPProblem",
    "LPStatus",
    "lp_solve",
    "lp_minimize",
    "HPolytope",
    "VData",
    "Cell",
    "ExtremalProblem",
    "phi",
    "phi_dual",
    "phi_gauge",
    "sublevel_vdata",
    "verify_remark22",
    "CrossFactor",
    "CrossSpec",
    "Trichotomy",
    "WClass",
    "cross_membership",
    "w_value",
    "conv_cross_classify",
    "product_phi_check",
    "recursive_phi_sum",
    "verify_prop24",
    "NEG_INF",
    "LogPoint",
    "ReinhardtDomain",
    "ReinhardtCross",
    "contains_point",
    "is_log_convex",
    "is_doh",
    "envelope",
    "h_star",
    "cross_envelope_verify",
]

""" Initialize colorama only once """
colorama.init()
