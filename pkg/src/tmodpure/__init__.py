"""Purity and almost strict purity of t-modules over the perfect closure of F_q(theta)."""

from .errors import (ConfigMismatch, DivisionByZero, FieldError, InternalError,
                     NilpotencyViolation, NonUnit, ParseError, PrecisionExhausted,
                     ShapeError, TModError, ZeroSeries)
from .fields import FqConfig, PerfElem, field_for_q, fq, parse_elem
from .kernels import IMPLEMENTATION
from .newton import Classification, NewtonPolygon, classify, classify_tmodule, newton_polygon
from .ore import SigmaSeries, TauPoly, embed, sigma_inv, sigma_mul
from .smith import (DiagResult, ElementaryOp, TMatrix, TPoly, apply_elementary, char_matrix,
                    diagonalize, last_invariant_factor, t_div)
from .tmodule import (AspReport, TModule, asp_check, carlitz, d2, d2_structure_report, d2m,
                      direct_sum, maurischat_M, preset)

__version__ = "0.1.0"
