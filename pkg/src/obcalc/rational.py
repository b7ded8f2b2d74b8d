"""Rational number formatting shared by every serializer."""

from fractions import Fraction


def fmt(q):
    """Render a rational as ``"p/q"`` (integers as ``"p/1"``).

    ``None`` passes through so optional report fields serialize cleanly.
    """
    if q is None:
        return None
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def pretty(q):
    """Human-facing form: ``"1/6"``, ``"-2"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse(text):
    """Inverse of :func:`fmt`; also accepts plain integers."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())
