"""Exact rational arithmetic backend.

Everything in this package computes with exact rationals; floats are rejected
at every parse boundary because rounding destroys the strict-vs-weak
inequality distinctions the certificates rest on.

``gmpy2.mpq`` is used when available (several times faster, which matters for
the randomized battery); ``fractions.Fraction`` is the drop-in fallback. Set
``PRIOR_FORGE_RATIONAL=fraction`` to force the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction

if os.environ.get("PRIOR_FORGE_RATIONAL", "").lower() == "fraction":
    Rational = Fraction
else:
    try:
        from gmpy2 import mpq as Rational  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - exercised via env override instead
        Rational = Fraction  # type: ignore[misc,assignment]

ZERO = Rational(0)
ONE = Rational(1)

# Accepted scalar inputs: int, backend rationals, Fraction, "a/b" / "a" strings.
# Floats are never accepted, not even integral ones.
_RATIONAL_TYPES = (int, Fraction, type(ZERO))


def rational(value) -> "Rational":
    """Coerce ``value`` to an exact rational, rejecting floats and junk."""
    if type(value) is type(ZERO):
        return value
    if isinstance(value, bool):
        raise TypeError(f"not a rational: {value!r}")
    if isinstance(value, _RATIONAL_TYPES):
        return Rational(value)
    if isinstance(value, str):
        return _parse_str(value)
    raise TypeError(f"not a rational: {value!r} (floats are rejected; use 'a/b' strings)")


def _parse_str(text: str) -> "Rational":
    body = text.strip()
    num, sep, den = body.partition("/")
    try:
        if sep:
            n, d = int(num), int(den)
            if d == 0:
                raise ValueError
            return Rational(n, d)
        return Rational(int(body))
    except ValueError:
        raise ValueError(f"malformed rational literal: {text!r}") from None


def format_rational(q) -> str:
    """Render as ``a/b``, or ``a`` when the denominator is 1."""
    return str(q)


def to_json_value(q):
    """JSON form: plain int when integral, ``"a/b"`` string otherwise."""
    if q.denominator == 1:
        return int(q)
    return str(q)
