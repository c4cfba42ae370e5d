"""Exact rational arithmetic: decimal parsing, truncation, rounding, rendering.

Every numeric value in this package is a fractions.Fraction, aliased Q.
Fraction keeps values in canonical reduced form with a positive denominator,
which serialization and equality checks rely on. Nothing in the certification
path ever passes through floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Q = Fraction
Rational = Fraction

__all__ = [
    "Q",
    "Rational",
    "ParseError",
    "parse_decimal",
    "parse_rational",
    "truncate",
    "round_up",
    "format_decimal",
    "decimal_str",
    "rational_str",
]


class ParseError(ValueError):
    """Raised when a literal does not match the expected grammar."""


_DECIMAL = re.compile(r"(?P<whole>[+-]?\d+)(?:\.(?P<frac>\d+))?(?:[eE](?P<exp>[+-]?\d+))?")
_RATIONAL = re.compile(r"(?P<num>[+-]?\d+)/(?P<den>\d+)")


def parse_decimal(text: str) -> Q:
    """Parses a decimal literal ("0.3", "-1.5e-3") to its exact value.

    Grammar: optional sign, digits, optional fractional part, optional
    exponent. The period is the only accepted separator; no thousands
    grouping, no leading/trailing period, no bare exponent.
    """
    token = text.strip()
    match = _DECIMAL.fullmatch(token)
    if match is None:
        raise ParseError(f"malformed decimal literal {token!r}")
    whole, frac, exp = match.group("whole", "frac", "exp")
    value = Q(int(whole + (frac or "")), 10 ** len(frac or ""))
    if exp is not None:
        value *= Q(10) ** int(exp)
    return value


def parse_rational(text: str) -> Q:
    """Parses a "num/den" literal to its exact value."""
    token = text.strip()
    match = _RATIONAL.fullmatch(token)
    if match is None:
        raise ParseError(f"malformed rational literal {token!r}")
    den = int(match.group("den"))
    if den == 0:
        raise ParseError(f"zero denominator in {token!r}")
    return Q(int(match.group("num")), den)


def truncate(x: Q, places: int) -> tuple[Q, Q]:
    """Truncates x toward minus infinity on the 10**-places grid.

    Returns (t, err) with t + err = x exactly and 0 <= err < 10**-places.
    """
    if places < 0:
        raise ValueError("places must be nonnegative")
    scale = 10 ** places
    t = Q(math.floor(x * scale), scale)
    return t, x - t


def round_up(x: Q, places: int) -> Q:
    """Rounds x toward plus infinity on the 10**-places grid. Never decreases x."""
    if places < 0:
        raise ValueError("places must be nonnegative")
    scale = 10 ** places
    return Q(math.ceil(x * scale), scale)


def format_decimal(x: Q, digits: int) -> str:
    """Renders x with exactly `digits` fractional digits.

    The last digit is rounded toward plus infinity so a rendered upper bound
    stays an upper bound.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    scale = 10 ** digits
    scaled = math.ceil(x * scale)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def decimal_str(x: Q) -> str:
    """Renders x as an exact decimal literal.

    Defined only when the denominator divides a power of ten; anything else
    has no finite decimal form and raises ValueError.
    """
    den = x.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{rational_str(x)} has no finite decimal form")
    places = max(twos, fives)
    if places == 0:
        return str(x.numerator)
    scaled = x.numerator * 10 ** places // x.denominator
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}"


def rational_str(x: Q) -> str:
    """Serializes x as "num/den" in canonical reduced form."""
    return f"{x.numerator}/{x.denominator}"
