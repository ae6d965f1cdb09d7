"""Goppa codes, algebraic-geometry codes and Cartier codes over small finite fields."""

from .ff import (FieldCtx, FieldElement, FieldTower, embed, frobenius_q, mk_field, mk_tower,
                 pth_root, trace_to_base, try_descend)

__version__ = "0.1.0"
