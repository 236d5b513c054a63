"""Small numeric helpers: exact wrapping, half-period-exact trig, formatting."""

from __future__ import annotations

import math
from fractions import Fraction


def exactify(value):
    """Convert a numeric parameter to an exact rational.

    Floats are dyadic rationals, so Fraction(float) is lossless.  Exact
    parameters are what make canonical forms (and therefore Cayley-ball
    deduplication) sound.
    """
    if isinstance(value, float):
        if math.isinf(value) or math.isnan(value):
            raise ValueError(f"non-finite parameter {value!r}")
        return Fraction(value)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"expected a number, got {type(value).__name__}")


def wrap(value):
    """Reduce to [0, 1), exactly for Fraction/int inputs."""
    return value - math.floor(value) + 0  # +0 normalizes float -0.0


def circle_dist(a, b):
    """Distance between two points of R/Z."""
    d = wrap(a - b)
    return min(d, 1 - d)


def sinpi(u):
    """sin(pi*u) with exact zeros at integer u."""
    r = u - 2 * math.floor(u / 2)  # r in [0, 2)
    if r == 0 or r == 1:
        return 0
    return math.sin(math.pi * float(r))


def cospi(u):
    """cos(pi*u) with exact values at integer and half-integer u."""
    r = u - 2 * math.floor(u / 2)
    if r == 0:
        return 1
    if r == 1:
        return -1
    if r == Fraction(1, 2) or r == Fraction(3, 2):
        return 0
    return math.cos(math.pi * float(r))


def fmt(value):
    """Deterministic human-readable rendering of a number."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        # huge dyadic denominators come from float parameters; show the float
        if value.denominator.bit_length() > 32:
            return repr(float(value))
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_number(text):
    """Parse a scenario literal: integer, p/q rational, decimal, or inf."""
    text = text.strip()
    if text in ("inf", "+inf", "oo"):
        return math.inf
    if text == "-inf":
        return -math.inf
    try:
        if "/" in text:
            return Fraction(text)
        if "." in text or "e" in text or "E" in text:
            return Fraction(text)  # exact decimal
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad number literal {text!r}") from exc
