"""Exact rational scalars and shared algebraic helpers.

Every value handled by this package is an arbitrary-precision rational
(`fractions.Fraction`); floats are rejected at the boundary so no rounding
can creep into a computation.  The helpers here codify two conventions the
closed forms rely on silently:

* empty sums are 0 and empty products are 1 (so every formula returns the
  initial conditions unchanged at the first indices), and
* parity dispatch is done with exact 0/1 selectors rather than powers of -1.
"""

from __future__ import annotations

import re
from fractions import Fraction

# The universal scalar type.  Stored reduced with positive denominator,
# value equality -- Fraction guarantees all of it.
ExactScalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# optional '-', digits, optionally '/' and digits (denominator nonzero)
_RATIONAL_RE = re.compile(r"^-?[0-9]+(?:/([0-9]+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal such as ``"3"`` or ``"-1/2"``.

    The accepted grammar is deliberately narrower than Fraction's own
    parser: no sign on the denominator, no decimals, no exponent, no
    whitespace.  Raises ValueError naming the offending token.
    """
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    denom = match.group(1)
    if denom is not None and int(denom) == 0:
        raise ValueError(f"zero denominator in rational literal: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    """Render ``value`` in the same grammar parse_rational accepts."""
    return str(value)


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce an int, rational literal, or Fraction to an ExactScalar.

    Floats are refused: admitting them would silently launder binary
    rounding error into the exact pipeline.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to an exact rational")


def geometric_sum(q: int | Fraction, m: int) -> Fraction:
    """Sum of q**i for i = 0..m, exactly.

    m may be negative, in which case the sum is empty and equals 0.
    For q != 1 the closed form (q**(m+1) - 1)/(q - 1) is used; for q == 1
    the sum is m + 1.
    """
    if m < 0:
        return ZERO
    q = rat(q)
    if q == 1:
        return Fraction(m + 1)
    return (q ** (m + 1) - 1) / (q - 1)


def parity_selectors(r: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact 0/1 selectors (alpha, beta, gamma, lam) for the parity of r.

    alpha = lam = 1 and beta = gamma = 0 when r is even; the complement when
    r is odd.  Hence alpha + beta = gamma + lam = 1 and alpha*beta =
    gamma*lam = 0 always.
    """
    if r < 0:
        raise ValueError("parity selectors are defined for nonnegative r")
    if r % 2 == 0:
        return (ONE, ZERO, ZERO, ONE)
    return (ZERO, ONE, ONE, ZERO)


def alternating_sign(n: int) -> Fraction:
    """(-1)**n as an exact scalar; n may be negative (relabeled indices)."""
    return ONE if n % 2 == 0 else -ONE
