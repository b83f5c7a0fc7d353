"""
Exact rational helpers.

Rationals cross every serialization boundary as "p/q" strings; decimals are
never produced and never accepted.
"""

import re
from fractions import Fraction
from typing import Union

from .errors import InvalidInputError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")

RationalLike = Union[int, str, Fraction]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an int, a Fraction, or a "p/q" / "n" string into a Fraction"""
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise InvalidInputError(f"not a rational: {value!r}")

    match = _RATIONAL_RE.match(value)
    if not match:
        raise InvalidInputError(f"malformed rational {value!r}; expected 'p/q' or an integer")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise InvalidInputError(f"zero denominator in {value!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Union[int, Fraction]) -> str:
    """Render a rational as "p/q" (integers as "n/1")"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
