"""Exact rational scalars.

All coefficients in the engine are rationals in lowest terms with positive
denominator; no floating point is allowed anywhere.  The arithmetic is
delegated to ``gmpy2.mpq`` (canonical form is maintained automatically and
it hashes compatibly with ``fractions.Fraction``), with the stdlib Fraction
as a drop-in fallback.

Serialization is the string "p/q", or "p" when the denominator is 1.
``parse_rational`` deliberately rejects decimal notation so that float
literals cannot sneak into configs.
"""

import re

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rational(numerator, denominator=1):
    """Exact rational from integers (or another rational)."""
    return Q(numerator, denominator) if denominator != 1 else Q(numerator)


def parse_rational(text):
    """Parse "p/q" or "p".  Rejects anything else, in particular decimals."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not an exact rational literal: {text!r}")
    s = text.strip()
    if "/" in s:
        p, q = s.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Q(int(p), int(q))
    return Q(int(s))


def format_rational(value):
    """Inverse of parse_rational; gmpy2 and Fraction both print as p/q."""
    return str(value)


def is_integer(value):
    return value.denominator == 1


def as_rational(value):
    """Coerce ints and rational strings; floats are refused."""
    if isinstance(value, float):
        raise TypeError("floating point is not allowed in this engine")
    if isinstance(value, str):
        return parse_rational(value)
    return Q(value)
