"""Shared oracle utilities for the test suite.

The certified package is stdlib-only; tests are where third-party oracles
(mpmath, sympy) and frozen high-precision digit strings come in.  Every
helper here converts oracle output to exact Fractions so containment
assertions never go through floats.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mp

# Default oracle working precision (decimal digits) and the slack granted to
# the oracle itself.  The slack is deliberately far below every certified
# radius we test against, and far above mpmath's error at this dps.
ORACLE_DPS = 130
ORACLE_FUZZ = Fraction(1, 10**110)

# Frozen reference digits (checked against multiple published sources).
LN2_110 = Fraction(
    "0.69314718055994530941723212145817656807550013436025525412068000949339362196"
    "9694715605863326996418687542001"
)
GAMMA_110 = Fraction(
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677"
    "7664670936947063291746749514631"
)
PI_110 = Fraction(
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628"
    "620899862803482534211706798215"
)


def exact_fraction(x) -> Fraction:
    """Convert a finite mpmath float to the exact Fraction it represents."""
    sign, man, exp, _ = mp.mpf(x)._mpf_
    if man == 0 and exp != 0:
        raise ValueError(f"non-finite oracle value: {x!r}")
    value = Fraction(man) * Fraction(2) ** exp
    return -value if sign else value


def _to_mpf(a):
    if isinstance(a, Fraction):
        return mp.mpf(a.numerator) / mp.mpf(a.denominator)
    return mp.mpf(a) if isinstance(a, (int, float)) else a


def oracle(fn, *args, dps: int = ORACLE_DPS) -> Fraction:
    """Evaluate an mpmath function at high precision, returned exactly."""
    with mp.workdps(dps):
        return exact_fraction(fn(*[_to_mpf(a) for a in args]))


def assert_contains(ball, value, fuzz: Fraction = ORACLE_FUZZ, label: str = "") -> None:
    """Assert `value` (Fraction) lies in the ball, modulo oracle slack."""
    v = Fraction(value)
    lo, hi = ball.lower(), ball.upper()
    assert lo - fuzz <= v <= hi + fuzz, (
        f"{label or 'value'} {float(v)} outside [{float(lo)}, {float(hi)}] "
        f"(fuzz {float(fuzz)})"
    )


def assert_in_window(ball, lo: str, hi: str, label: str = "") -> None:
    """Assert the whole enclosure sits inside the half-open decimal window."""
    lo_f, hi_f = Fraction(lo), Fraction(hi)
    assert ball.lower() >= lo_f and ball.upper() < hi_f, (
        f"{label or 'enclosure'} [{float(ball.lower())}, {float(ball.upper())}] "
        f"not within [{lo}, {hi})"
    )
