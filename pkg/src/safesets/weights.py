"""Weight functions: nonnegative rationals indexed by vertex id.

Weights cross process boundaries as strings ("5" or "5/2") inside JSON; in
memory they are tuples of fractions.Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .graph import InputError

WeightFn = tuple[Fraction, ...]


def parse_rational(text: str | int) -> Fraction:
    """Parse "p" or "p/q" (or a plain int) into a Fraction."""
    if isinstance(text, bool):
        raise InputError("weights must be rationals, not booleans")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputError(f"cannot parse rational from {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {text!r}: {exc}") from exc


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def make_weights(values: Iterable[Fraction | int | str], n: int | None = None) -> WeightFn:
    """Normalize raw weight values, enforcing nonnegativity (and length if given)."""
    out = tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in values)
    if n is not None and len(out) != n:
        raise InputError(f"expected {n} weights, got {len(out)}")
    for i, w in enumerate(out):
        if w < 0:
            raise InputError(f"weight at vertex {i} is negative")
    return out


def parse_weights_json(obj: object, n: int | None = None) -> WeightFn:
    """Accept either {"weights": [...]} or a bare list of rational strings."""
    if isinstance(obj, dict):
        if "weights" not in obj:
            raise InputError('weight object must carry a "weights" field')
        obj = obj["weights"]
    if not isinstance(obj, list):
        raise InputError("weights must be a JSON array of rational strings")
    return make_weights(obj, n)


def weights_to_json(w: Sequence[Fraction]) -> dict:
    return {"weights": [format_rational(x) for x in w]}


def scaled_integers(w: Sequence[Fraction]) -> tuple[list[int], int]:
    """Clear denominators: returns (integer weights, common denominator).

    Every comparison the solver makes is invariant under positive scaling, so
    working in integers is exact and much faster than summing fractions.
    """
    denom = lcm(*(x.denominator for x in w)) if w else 1
    return [int(x * denom) for x in w], denom
