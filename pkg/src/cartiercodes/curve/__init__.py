"""Curves: the projective line and smooth plane curves, with divisors and differentials."""

from .divisor import Differential, Divisor, Place, RRBasis, g_u, geq
from .model import format_divisor_text, mk_curve, parse_curve_text, parse_divisor_text, parse_field_spec
from .plane import CurveError, FuncElem, PlaneCurve
from .pline import ProjectiveLine
