"""Exact p-adic valuation and absolute value on rational numbers.

Every scalar is a ``fractions.Fraction``: arbitrary precision, always in
reduced form with a positive denominator, so equality is structural.  The
valuation of zero is +infinity (``math.inf``) and ``|0|_p = 0``; for any
nonzero rational ``x = p^k * a/b`` with ``p`` dividing neither ``a`` nor
``b``, ``vp(x, p) == k`` and ``padic_abs(x, p) == Fraction(p) ** -k``.
Negative valuations arise when ``p`` divides the reduced denominator.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

INF = math.inf

# Finite valuations are plain ints; INF stands in for the valuation of zero.
Valuation = int | float


def is_prime(n: int) -> bool:
    """Trial-division primality check; inputs are desk-scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")
    return p


def vp(x: Fraction | int, p: int) -> Valuation:
    """p-adic valuation of a rational: the exponent of p in x.

    Returns INF for x == 0.  Negative values mean p divides the reduced
    denominator, e.g. vp(3/4, 2) == -2.
    """
    if x == 0:
        return INF
    num = abs(x.numerator)
    den = x.denominator
    v = 0
    if num % p == 0:
        while num % p == 0:
            num //= p
            v += 1
    else:
        # Reduced fractions: p can divide at most one of num, den.
        while den % p == 0:
            den //= p
            v -= 1
    return v


def padic_abs(x: Fraction | int, p: int) -> Fraction:
    """p-adic absolute value p**(-vp(x)), exactly; 0 maps to 0."""
    if x == 0:
        return Fraction(0)
    v = vp(x, p)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


def is_p_integer(x: Fraction | int, p: int) -> bool:
    """True iff x lies in Z_p, i.e. vp(x) >= 0 (denominator coprime to p)."""
    return x == 0 or x.denominator % p != 0


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or "a" into an exact Fraction.

    Only plain integer and slash forms are accepted (no decimals or
    exponents); a zero denominator is rejected.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in s:
        num_s, den_s = s.split("/")
        if int(den_s) == 0:
            raise ValueError(f"zero denominator in rational {text!r}")
        return Fraction(int(num_s), int(den_s))
    return Fraction(int(s))


def format_rational(x: Fraction | int) -> str:
    """Render a rational as "a/b" or "a" (the inverse of parse_rational)."""
    f = Fraction(x)
    return str(f)
