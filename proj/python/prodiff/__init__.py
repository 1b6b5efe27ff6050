"""Exact computations with formal diffeomorphisms of the line.

Rationals are exchanged as :class:`fractions.Fraction`; ints and exact strings
such as ``"3/4"`` are accepted on input, floats are rejected.
"""

import json as _json

from ._core import (
    Diffeo,
    Field,
    InvariantError,
    ParseError,
    PreconditionError,
    bch,
    bracket,
    compose,
    exp,
    field_norm_bounds,
    invert,
    log,
    q_lower,
    q_norm,
    q_upper,
    qn_norm,
    scale,
    scale_field,
    straighten,
    substitute,
    u_combinatorial,
    w_norm,
)
from ._core import verify as _verify


def verify(suite: str = "all", order: int = 12, seed: int = 7) -> dict:
    """Run a randomized invariant suite and return the parsed report."""
    return _json.loads(_verify(suite, order, seed))


__all__ = [
    "Diffeo",
    "Field",
    "InvariantError",
    "ParseError",
    "PreconditionError",
    "bch",
    "bracket",
    "compose",
    "exp",
    "field_norm_bounds",
    "invert",
    "log",
    "q_lower",
    "q_norm",
    "q_upper",
    "qn_norm",
    "scale",
    "scale_field",
    "straighten",
    "substitute",
    "u_combinatorial",
    "verify",
    "w_norm",
]
