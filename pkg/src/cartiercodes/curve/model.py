"""Building curves and divisors from text."""

from __future__ import annotations

import re

from ..ff import FieldCtx, FieldError, mk_field, parse_field_line
from ..parse import parse_poly
from ..polymat.mpoly import MPoly
from .divisor import Divisor
from .plane import CurveError, PlaneCurve
from .pline import ProjectiveLine


def mk_curve(ctx: FieldCtx, F: MPoly | str, name: str = ""):
    """A validated curve from a homogeneous form; degree 1 gives the projective line."""
    if isinstance(F, str):
        F = parse_poly(F, ctx)
    if not F.is_homogeneous() or F.is_zero():
        raise CurveError("curve equation must be a nonzero homogeneous form")
    if F.total_degree() == 1:
        return ProjectiveLine(ctx)
    return PlaneCurve(ctx, F, name)


def parse_field_spec(text: str) -> FieldCtx:
    """A field from ``F8``, ``GF(9)``, ``8``, ``2^3`` or a full ``field p=.. m=..`` line."""
    s = text.strip()
    if "=" in s:
        return parse_field_line(s)
    m = re.fullmatch(r"(?:F|GF)?\(?(\d+)(?:\^(\d+))?\)?", s)
    if not m:
        raise FieldError(f"cannot parse field {text!r}")
    base = int(m.group(1))
    exp = int(m.group(2) or 1)
    size = base ** exp
    for p in range(2, size + 1):
        if size % p == 0:
            k, v = 0, size
            while v % p == 0:
                v //= p
                k += 1
            if v != 1:
                raise FieldError(f"{size} is not a prime power")
            return mk_field(p, k)
    raise FieldError(f"{size} is not a prime power")


def _strip_comments(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_curve_text(text: str, field: FieldCtx | None = None):
    """Parse a curve description.

    Accepted forms::

        curve field=F8 poly=x^3*y + y^3*z + x*z^3

        field p=2 m=3 modulus=1,1,0,1
        curve poly=x^3*y + y^3*z + x*z^3

        field p=2 m=2
        curve P1
    """
    ctx = field
    poly = None
    line_model = False
    for line in _strip_comments(text):
        if line.startswith("field"):
            ctx = parse_field_line(line)
        elif line.startswith("curve"):
            body = line[len("curve"):].strip()
            if body in ("P1", "line"):
                line_model = True
                continue
            m = re.match(r"field=(.*?)\s+poly=(.*)$", body)
            if m:
                ctx = parse_field_spec(m.group(1))
                poly = m.group(2)
            elif body.startswith("poly="):
                poly = body[len("poly="):]
            else:
                raise CurveError(f"cannot parse curve line {line!r}")
        else:
            raise CurveError(f"unexpected line {line!r}")
    if ctx is None:
        raise CurveError("no field given for the curve")
    if line_model:
        return ProjectiveLine(ctx)
    if poly is None:
        raise CurveError("no curve equation given")
    return mk_curve(ctx, poly)


def parse_divisor_text(curve, text: str) -> Divisor:
    """One ``<place> <multiplicity>`` per line; a missing multiplicity means 1."""
    out = {}
    for line in _strip_comments(text):
        m = re.match(r"^(.*?)(?:\s+([+-]?\d+))?$", line)
        place_text, mult = m.group(1), m.group(2)
        P = curve.parse_place(place_text)
        out[P] = out.get(P, 0) + (int(mult) if mult is not None else 1)
    return Divisor(out)


def format_divisor_text(curve, G: Divisor) -> str:
    return "".join(f"{curve.format_place(P)} {n}\n" for P, n in G.items())
