"""Verification suite behind the bound catalog.

The catalog states inequalities; this module certifies the claims *about*
those inequalities: that the quadratic-window bound's constants are sharp
(the sequence f below is increasing and approaches 6/5), that the auxiliary
function g driving the monotonicity argument is positive, that the
fourth-order error term stays inside (0, 1), that the quadratic-window
bound refines the earlier ones, that the alternating-tail constants
decrease toward 1, that the Stirling remainders look completely monotonic
under finite differencing, and that every declared equality case reduces
to an exact algebraic identity.

Every check yields a CheckRecord with a verdict, a margin enclosure and
the precision that decided it.  Comparisons that fail to resolve retry at
doubled precision up to the library cap before reporting undecided.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import elementary, specfun
from .ball import (
    Ball,
    DEFAULT_PRECISION,
    MAX_PRECISION,
    Order,
    add,
    bits_of,
    compare,
    div,
    mul,
    recip,
    round_ball,
    scale2,
    sub,
)
from .bounds import (
    _alt_tail_shift,
    _gamma,
    _ln_half_int,
    _ln_int,
    _main_shift,
    _min_by_mid,
    bound_ids,
    catalog,
    catalog_map,
    check_bound,
)
from .report import CheckRecord, Verdict, VerificationReport
from .symbolic import Poly, PolyFraction

__all__ = [
    "CHECK_NAMES",
    "DEFAULT_G_GRID",
    "SharpnessProfile",
    "f_eval",
    "sharpness_profile",
    "sharpness_main",
    "g_positivity",
    "epsilon_window",
    "refinement_check",
    "alt_tail_constants",
    "cm_spotcheck",
    "equality_witnesses",
    "verify_all",
]

_LIMIT = Fraction(6, 5)
_GUARD = 16
_W_CAP = bits_of(MAX_PRECISION) + _GUARD

DEFAULT_G_GRID: tuple[int, ...] = (3, 4, 5, 10, 50, 100)

CHECK_NAMES: tuple[str, ...] = (
    "bounds",
    "sharpness",
    "g_positivity",
    "epsilon",
    "refinement",
    "alt_tail",
    "cm",
    "equality",
)


@dataclass(frozen=True)
class SharpnessProfile:
    """Snapshot of the sharpness evidence at a single index."""

    n: int
    f_of_n: Ball
    monotone_ok: bool
    below_limit_ok: bool


# ---------------------------------------------------------------------------
# decision ladders
# ---------------------------------------------------------------------------

def _decide_less(make: Callable[[int], tuple[Ball, Ball]], w0: int) -> tuple[Verdict, Ball, int]:
    """Certify a < b for (a, b) = make(w), doubling w until decided."""
    w = w0
    while True:
        a, b = make(w)
        order = compare(a, b)
        margin = sub(b, a, w)
        if order is Order.CERTAINLY_LESS:
            return Verdict.PASS, margin, w
        if order is Order.CERTAINLY_GREATER:
            return Verdict.FAIL, margin, w
        if w >= _W_CAP:
            return Verdict.UNDECIDED, margin, w
        w = min(2 * w, _W_CAP)


def _decide_window(
    make: Callable[[int], Ball], lo: Fraction, hi: Fraction, w0: int
) -> tuple[Verdict, Ball, int]:
    """Certify that the value enclosed by make(w) lies inside (lo, hi)."""
    w = w0
    while True:
        v = make(w)
        margin = Ball.from_fraction(min(v.lower() - lo, hi - v.upper()), 64)
        if v.lower() > lo and v.upper() < hi:
            return Verdict.PASS, margin, w
        if v.upper() <= lo or v.lower() >= hi:
            return Verdict.FAIL, margin, w
        if w >= _W_CAP:
            return Verdict.UNDECIDED, margin, w
        w = min(2 * w, _W_CAP)


def _overlap_verdict(a: Ball, b: Ball, w: int) -> tuple[Verdict, Ball]:
    """Two enclosures of the same real must intersect."""
    verdict = Verdict.PASS if compare(a, b) is Order.OVERLAPPING else Verdict.FAIL
    return verdict, sub(a, b, w)


def _worst(*verdicts: Verdict) -> Verdict:
    for v in (Verdict.FAIL, Verdict.UNDECIDED):
        if v in verdicts:
            return v
    return Verdict.PASS


def _zero(w: int) -> Ball:
    return Ball.from_int(0)


# ---------------------------------------------------------------------------
# the sharpness function f
# ---------------------------------------------------------------------------

def _f_int(n: int, w: int) -> Ball:
    """f(n) = 1/(ln n + 1/(2n) - psi(n+1)) - 12 n^2 at integer n."""
    ww = w
    while True:
        den = specfun.psi_gap(n, ww)
        if den.is_positive():
            return sub(recip(den, ww), Ball.from_int(12 * n * n), ww)
        if ww >= _W_CAP:
            raise specfun.PrecisionExhausted(
                f"f denominator straddles zero at n={n} even at {ww} bits"
            )
        ww = min(2 * ww, _W_CAP)


def _gap_ball(x: Ball, w: int) -> Ball:
    """ln x + 1/(2x) - psi(x+1) for a positive ball argument."""
    lnx = elementary.ln(x, w)
    half = recip(scale2(x, 1), w)
    psi = specfun.digamma(add(x, Ball.from_int(1), w), w)
    return sub(add(lnx, half, w), psi, w)


def f_eval(x, prec=DEFAULT_PRECISION) -> Ball:
    """Enclosure of f at an integer n >= 1 or a positive ball argument."""
    p = bits_of(prec)
    w = p + _GUARD
    if isinstance(x, int):
        if x < 1:
            raise ValueError("integer argument must be >= 1")
        return round_ball(_f_int(x, w), p)
    if not isinstance(x, Ball):
        raise TypeError("argument must be an int or a Ball")
    ww = w
    while True:
        den = _gap_ball(x, ww)
        if den.is_positive():
            sq = mul(Ball.from_int(12), mul(x, x, ww), ww)
            return round_ball(sub(recip(den, ww), sq, ww), p)
        if ww >= _W_CAP:
            raise specfun.PrecisionExhausted(
                "f denominator straddles zero at maximum precision"
            )
        ww = min(2 * ww, _W_CAP)


class _FCache:
    """Per-sweep memo of f(n) enclosures keyed by (n, working bits)."""

    def __init__(self) -> None:
        self._memo: dict[tuple[int, int], Ball] = {}

    def at(self, n: int, w: int) -> Ball:
        key = (n, w)
        v = self._memo.get(key)
        if v is None:
            v = _f_int(n, w)
            self._memo[key] = v
        return v


def _limit_ball(w: int) -> Ball:
    return Ball.from_fraction(_LIMIT, w)


def _f_closed_form(n: int, w: int) -> Ball:
    """Closed forms of f(1), f(2), f(3) as expressions in g, ln 2, ln 3."""
    g = _gamma(w)
    if n == 1:
        return _main_shift(w)
    if n == 2:
        l2 = elementary.ln2_ball(w)
        s = add(mul(Ball.from_int(48), g, w), mul(Ball.from_int(48), l2, w), w)
        num = mul(Ball.from_int(4), sub(s, Ball.from_int(61), w), w)
        den = sub(Ball.from_int(5), add(mul(Ball.from_int(4), g, w), mul(Ball.from_int(4), l2, w), w), w)
        return div(num, den, w)
    if n == 3:
        l3 = elementary.ln(Ball.from_int(3), w)
        s = add(mul(Ball.from_int(108), g, w), mul(Ball.from_int(108), l3, w), w)
        num = mul(Ball.from_int(3), sub(s, Ball.from_int(181), w), w)
        den = sub(Ball.from_int(5), add(mul(Ball.from_int(3), g, w), mul(Ball.from_int(3), l3, w), w), w)
        return div(num, den, w)
    raise ValueError("closed forms are recorded only for n in {1, 2, 3}")


_F_PRINTED = {
    1: Fraction("0.9507"),
    2: Fraction("1.1090"),
    3: Fraction("1.1549"),
}
_F_DIGIT_STEP = Fraction(1, 10**4)

_GAP_SAMPLES = (1, 2, 3, 10, 100, 1000)


def sharpness_profile(n: int, prec=DEFAULT_PRECISION) -> SharpnessProfile:
    """Evidence that f(n) < f(n+1) and f(n) < 6/5 at one index."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = bits_of(prec)
    w = p + _GUARD
    cache = _FCache()
    mono, _, _ = _decide_less(lambda ww: (cache.at(n, ww), cache.at(n + 1, ww)), w)
    below, _, _ = _decide_less(lambda ww: (cache.at(n, ww), _limit_ball(ww)), w)
    return SharpnessProfile(
        n=n,
        f_of_n=round_ball(cache.at(n, w), p),
        monotone_ok=mono is Verdict.PASS,
        below_limit_ok=below is Verdict.PASS,
    )


def sharpness_main(max_n: int, prec=DEFAULT_PRECISION) -> VerificationReport:
    """Certify that f is increasing, capped by 6/5, and anchored at 1, 2, 3."""
    if max_n < 3:
        raise ValueError("max_n must be >= 3")
    p = bits_of(prec)
    w0 = p + _GUARD
    cache = _FCache()
    rep = VerificationReport()

    for n in (1, 2, 3):
        verdict, margin = _overlap_verdict(cache.at(n, w0), _f_closed_form(n, w0), w0)
        rep.append(CheckRecord(
            check="f_value", params=(("n", n),),
            verdict=verdict, margin=margin, precision_bits=w0,
        ))
        lo = _F_PRINTED[n]
        verdict, margin, w = _decide_window(lambda ww, n=n: cache.at(n, ww), lo, lo + _F_DIGIT_STEP, w0)
        rep.append(CheckRecord(
            check="f_digits", params=(("n", n),),
            verdict=verdict, margin=margin, precision_bits=w,
        ))

    for n in range(1, max_n + 1):
        verdict, margin, w = _decide_less(
            lambda ww, n=n: (cache.at(n, ww), _limit_ball(ww)), w0
        )
        rep.append(CheckRecord(
            check="f_below_limit", params=(("n", n),),
            verdict=verdict, margin=margin, precision_bits=w,
        ))
        if n < max_n:
            verdict, margin, w = _decide_less(
                lambda ww, n=n: (cache.at(n, ww), cache.at(n + 1, ww)), w0
            )
            rep.append(CheckRecord(
                check="f_monotone", params=(("n", n),),
                verdict=verdict, margin=margin, precision_bits=w,
            ))

    samples = [n for n in _GAP_SAMPLES if n <= max_n]
    for a, b in zip(samples, samples[1:]):
        verdict, margin, w = _decide_less(
            lambda ww, a=a, b=b: (
                sub(_limit_ball(ww), cache.at(b, ww), ww),
                sub(_limit_ball(ww), cache.at(a, ww), ww),
            ),
            w0,
        )
        rep.append(CheckRecord(
            check="f_gap_decreasing", params=(("n", a), ("next", b)),
            verdict=verdict, margin=margin, precision_bits=w,
        ))

    if max_n >= 1000:
        verdict, margin, w = _decide_less(
            lambda ww: (
                sub(_limit_ball(ww), cache.at(1000, ww), ww),
                Ball.from_fraction(Fraction(1, 10**6), ww),
            ),
            w0,
        )
        rep.append(CheckRecord(
            check="f_limit_close", params=(("n", 1000),),
            verdict=verdict, margin=margin, precision_bits=w,
        ))
    return rep


# ---------------------------------------------------------------------------
# positivity of g and the envelope inequalities behind it
# ---------------------------------------------------------------------------

# numerators over c * x^k denominators, coefficients in ascending powers
_PSI_LOW = (Poly((10, 0, -21, 0, 210, 1260)), 2520, 6)
_PSI_HIGH = (Poly((-21, 0, 20, 0, -42, 0, 420, 2520)), 5040, 8)
_PSI1_LOW = (Poly((-7, 0, 5, 0, -7, 0, 35, 105, 210)), 210, 9)
_PSI1_HIGH = (Poly((5, 0, -7, 0, 35, 105, 210)), 210, 7)
_GAP_HIGH = (Poly((10, 0, -21, 0, 210)), 2520, 6)

_G_POLY = Poly((-100, 0, -8400, 0, 1659))
_G_SHIFTED = (58679, 128772, 81186, 19908, 1659)


def _poly_ball(poly: Poly, x: Ball, w: int) -> Ball:
    acc = Ball.from_int(0)
    for c in reversed(poly.coeffs):
        acc = add(mul(acc, x, w), Ball.from_fraction(c, w), w)
    return acc


def _ratio_ball(spec: tuple[Poly, int, int], x, w: int) -> Ball:
    """Evaluate numerator / (c x^k), exactly when x is rational."""
    poly, c, k = spec
    if isinstance(x, Ball):
        num = _poly_ball(poly, x, w)
        den = mul(Ball.from_int(c), _pow_ball(x, k, w), w)
        return div(num, den, w)
    xf = Fraction(x)
    return Ball.from_fraction(poly(xf) / (c * xf**k), w)


def _pow_ball(x: Ball, k: int, w: int) -> Ball:
    acc = Ball.from_int(1)
    for _ in range(k):
        acc = mul(acc, x, w)
    return acc


def _as_point(x) -> tuple[str, Ball | None, Fraction | None]:
    """Normalize a grid entry to (label, ball-or-None, rational-or-None)."""
    if isinstance(x, Ball):
        return f"[{float(x.mid_fraction()):.6g}]", x, None
    xf = Fraction(x)
    return str(x) if isinstance(x, int) else str(xf), None, xf


def _g_direct(x, w: int) -> Ball:
    """g(x) = psi'(x+1) - 1/x + 1/(2x^2) - 24 x (ln x + 1/(2x) - psi(x+1))^2."""
    if isinstance(x, Ball):
        t = specfun.trigamma(add(x, Ball.from_int(1), w), w)
        invx = recip(x, w)
        corr = sub(scale2(mul(invx, invx, w), -1), invx, w)
        gap = _gap_ball(x, w)
        tail = mul(mul(Ball.from_int(24), x, w), mul(gap, gap, w), w)
        return sub(add(t, corr, w), tail, w)
    xf = Fraction(x)
    t = specfun.trigamma(xf + 1, w)
    corr = Ball.from_fraction(Fraction(1, 2) / xf**2 - 1 / xf, w)
    if xf.denominator == 1 and xf >= 1:
        gap = specfun.psi_gap(int(xf), w)
    else:
        gap = _gap_ball(Ball.from_fraction(xf, w), w)
    tail = mul(Ball.from_fraction(24 * xf, w), mul(gap, gap, w), w)
    return sub(add(t, corr, w), tail, w)


def g_positivity(grid: Sequence | None = None, prec=DEFAULT_PRECISION) -> VerificationReport:
    """Certify g > 0 on the grid, plus the rational-envelope chain behind it."""
    points = tuple(grid) if grid is not None else DEFAULT_G_GRID
    if not points:
        raise ValueError("grid must be non-empty")
    p = bits_of(prec)
    w0 = p + _GUARD
    rep = VerificationReport()

    # the shifted expansion must reproduce the quartic exactly
    y = Poly.x() - Poly.const(3)
    recomposed = Poly.const(0)
    for c in reversed(_G_SHIFTED):
        recomposed = recomposed * y + Poly.const(c)
    identity_ok = recomposed == _G_POLY and _G_POLY(Fraction(3)) == _G_SHIFTED[0]
    rep.append(CheckRecord(
        check="g_shifted_identity", params=(("constant", _G_SHIFTED[0]),),
        verdict=Verdict.PASS if identity_ok else Verdict.FAIL,
        margin=None, precision_bits=0,
    ))

    for x in points:
        label, xball, xfrac = _as_point(x)
        base = xfrac if xfrac is not None else xball.lower()
        if base < 3:
            raise ValueError("grid points must be >= 3")

        # exact positivity of the quartic via its nonnegative shifted form
        yv = base - 3
        value = sum(c * yv**k for k, c in enumerate(_G_SHIFTED))
        rep.append(CheckRecord(
            check="g_polynomial", params=(("x", label),),
            verdict=Verdict.PASS if value > 0 else Verdict.FAIL,
            margin=Ball.from_fraction(value, 64), precision_bits=0,
        ))

        arg = xball if xball is not None else base
        verdict, margin, w = _decide_less(
            lambda ww, arg=arg: (_zero(ww), _g_direct(arg, ww)), w0
        )
        rep.append(CheckRecord(
            check="g_direct", params=(("x", label),),
            verdict=verdict, margin=margin, precision_bits=w,
        ))

        def psi_of(ww: int, arg=arg) -> Ball:
            return specfun.digamma(arg, ww)

        def ln_of(ww: int, arg=arg) -> Ball:
            a = arg if isinstance(arg, Ball) else Ball.from_fraction(arg, ww)
            return elementary.ln(a, ww)

        v1, m1, b1 = _decide_less(
            lambda ww: (sub(ln_of(ww), _ratio_ball(_PSI_LOW, arg, ww), ww), psi_of(ww)), w0
        )
        v2, m2, b2 = _decide_less(
            lambda ww: (psi_of(ww), sub(ln_of(ww), _ratio_ball(_PSI_HIGH, arg, ww), ww)), w0
        )
        rep.append(CheckRecord(
            check="psi_envelope", params=(("x", label),),
            verdict=_worst(v1, v2), margin=_min_by_mid(m1, m2),
            precision_bits=max(b1, b2),
        ))

        def psi1_of(ww: int, arg=arg) -> Ball:
            return specfun.trigamma(arg, ww)

        v1, m1, b1 = _decide_less(
            lambda ww: (_ratio_ball(_PSI1_LOW, arg, ww), psi1_of(ww)), w0
        )
        v2, m2, b2 = _decide_less(
            lambda ww: (psi1_of(ww), _ratio_ball(_PSI1_HIGH, arg, ww)), w0
        )
        rep.append(CheckRecord(
            check="psi1_envelope", params=(("x", label),),
            verdict=_worst(v1, v2), margin=_min_by_mid(m1, m2),
            precision_bits=max(b1, b2),
        ))

        def gap_of(ww: int, arg=arg) -> Ball:
            if isinstance(arg, Fraction) and arg.denominator == 1:
                return specfun.psi_gap(int(arg), ww)
            a = arg if isinstance(arg, Ball) else Ball.from_fraction(arg, ww)
            return _gap_ball(a, ww)

        verdict, margin, w = _decide_less(
            lambda ww: (gap_of(ww), _ratio_ball(_GAP_HIGH, arg, ww)), w0
        )
        rep.append(CheckRecord(
            check="gap_envelope", params=(("x", label),),
            verdict=verdict, margin=margin, precision_bits=w,
        ))
    return rep


# ---------------------------------------------------------------------------
# the fourth-order error window
# ---------------------------------------------------------------------------

def _epsilon(n: int, w: int) -> Ball:
    """120 n^4 (H(n) - ln n - g - 1/(2n) + 1/(12 n^2))."""
    inner = sub(Ball.from_fraction(Fraction(1, 12 * n * n), w), specfun.psi_gap(n, w), w)
    return mul(Ball.from_int(120 * n**4), inner, w)


def epsilon_window(max_n: int, prec=DEFAULT_PRECISION) -> VerificationReport:
    """Certify 0 < eps_n < 1 across [1, max_n], anchored at eps_1 = 70 - 120 g."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    p = bits_of(prec)
    w0 = p + _GUARD
    rep = VerificationReport()

    memo: dict[tuple[int, int], Ball] = {}

    def eps_at(n: int, ww: int) -> Ball:
        key = (n, ww)
        v = memo.get(key)
        if v is None:
            v = _epsilon(n, ww)
            memo[key] = v
        return v

    exact1 = sub(Ball.from_int(70), mul(Ball.from_int(120), _gamma(w0), w0), w0)
    verdict, margin = _overlap_verdict(eps_at(1, w0), exact1, w0)
    vwin, mwin, ww = _decide_window(
        lambda ww: eps_at(1, ww), Fraction("0.733"), Fraction("0.735"), w0
    )
    rep.append(CheckRecord(
        check="epsilon_anchor", params=(("n", 1),),
        verdict=_worst(verdict, vwin), margin=_min_by_mid(margin, mwin),
        precision_bits=max(w0, ww),
    ))

    one = Fraction(1)
    for n in range(1, max_n + 1):
        v1, m1, b1 = _decide_less(lambda ww, n=n: (_zero(ww), eps_at(n, ww)), w0)
        v2, m2, b2 = _decide_less(
            lambda ww, n=n: (eps_at(n, ww), Ball.from_fraction(one, ww)), w0
        )
        rep.append(CheckRecord(
            check="epsilon", params=(("n", n),),
            verdict=_worst(v1, v2), margin=_min_by_mid(m1, m2),
            precision_bits=max(b1, b2),
        ))
    return rep


# ---------------------------------------------------------------------------
# refinement ordering
# ---------------------------------------------------------------------------

_REFINED_IDS = ("chen", "toth_sharp", "detemple", "franel", "young")


def _recenter(target: str, n: int, w: int) -> Ball:
    """The exact-plus-ball quantity that maps a target back to H(n)."""
    if target == "H":
        return Ball.from_int(0)
    if target == "H_minus_ln_gamma":
        return add(_ln_int(n, w), _gamma(w), w)
    if target == "H_minus_lnhalf_gamma":
        return add(_ln_half_int(n, w), _gamma(w), w)
    if target == "H_minus_ln_half_n_gamma":
        r = add(_ln_int(n, w), _gamma(w), w)
        return add(r, Ball.from_fraction(Fraction(1, 2 * n), w), w)
    raise KeyError(f"unknown target: {target!r}")


def _implied_interval(bound_id: str, n: int, w: int) -> tuple[Ball, Ball]:
    spec = catalog_map()[bound_id]
    r = _recenter(spec.target, n, w)
    return add(spec.lower(n, w), r, w), add(spec.upper(n, w), r, w)


def refinement_check(max_n: int, prec=DEFAULT_PRECISION) -> VerificationReport:
    """Certify the quadratic-window H(n) interval sits inside the older ones."""
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    p = bits_of(prec)
    w0 = p + _GUARD
    rep = VerificationReport()
    for n in range(2, max_n + 1):
        memo: dict[tuple[str, int], tuple[Ball, Ball]] = {}

        def iv(bid: str, ww: int, n=n, memo=memo) -> tuple[Ball, Ball]:
            key = (bid, ww)
            v = memo.get(key)
            if v is None:
                v = _implied_interval(bid, n, ww)
                memo[key] = v
            return v

        for other in _REFINED_IDS:
            v1, m1, b1 = _decide_less(
                lambda ww, o=other: (iv(o, ww)[0], iv("main", ww)[0]), w0
            )
            v2, m2, b2 = _decide_less(
                lambda ww, o=other: (iv("main", ww)[1], iv(o, ww)[1]), w0
            )
            rep.append(CheckRecord(
                check="refinement", params=(("n", n), ("outer", other)),
                verdict=_worst(v1, v2), margin=_min_by_mid(m1, m2),
                precision_bits=max(b1, b2),
            ))
    return rep


# ---------------------------------------------------------------------------
# alternating-tail constants
# ---------------------------------------------------------------------------

def alt_tail_constants(max_n: int, prec=DEFAULT_PRECISION) -> VerificationReport:
    """Certify x_n = 1/|tail| - 2n decreases from 1/(1 - ln 2) - 2 toward 1."""
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    p = bits_of(prec)
    w0 = p + _GUARD
    rep = VerificationReport()

    memo: dict[tuple[int, int], Ball] = {}

    def x_at(n: int, ww: int) -> Ball:
        key = (n, ww)
        v = memo.get(key)
        if v is None:
            t = specfun.alternating_tail(n, ww)
            v = sub(recip(t, ww), Ball.from_int(2 * n), ww)
            memo[key] = v
        return v

    verdict, margin = _overlap_verdict(x_at(1, w0), _alt_tail_shift(w0), w0)
    vwin, mwin, ww = _decide_window(
        lambda ww: x_at(1, ww), Fraction("1.2588"), Fraction("1.2590"), w0
    )
    rep.append(CheckRecord(
        check="x_anchor", params=(("n", 1),),
        verdict=_worst(verdict, vwin), margin=_min_by_mid(margin, mwin),
        precision_bits=max(w0, ww),
    ))

    for n in range(1, max_n):
        verdict, margin, w = _decide_less(
            lambda ww, n=n: (x_at(n + 1, ww), x_at(n, ww)), w0
        )
        rep.append(CheckRecord(
            check="x_decreasing", params=(("n", n),),
            verdict=verdict, margin=margin, precision_bits=w,
        ))
        memo.pop((n, w0), None)

    verdict, margin, w = _decide_less(
        lambda ww: (Ball.from_int(1), x_at(max_n, ww)), w0
    )
    rep.append(CheckRecord(
        check="x_above_limit", params=(("n", max_n),),
        verdict=verdict, margin=margin, precision_bits=w,
    ))
    return rep


# ---------------------------------------------------------------------------
# complete-monotonicity spot checks
# ---------------------------------------------------------------------------

def cm_spotcheck(
    kind: str,
    order: int,
    grid: Sequence,
    depth: int,
    prec=DEFAULT_PRECISION,
) -> VerificationReport:
    """Finite-difference sign signature of the Stirling remainders."""
    pts = [Fraction(x) for x in grid]
    if len(pts) < 8:
        raise ValueError("grid must have at least 8 points")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError("grid must be strictly increasing")
    if pts[0] <= 0:
        raise ValueError("grid points must be positive")
    steps = {b - a for a, b in zip(pts, pts[1:])}
    if len(steps) != 1:
        raise ValueError("grid must be equally spaced")
    if not 0 <= depth <= 6:
        raise ValueError("depth must be between 0 and 6")
    if len(pts) <= depth:
        raise ValueError("grid too short for the requested depth")

    p = bits_of(prec)
    w0 = p + _GUARD
    rep = VerificationReport()

    memo: dict[int, list[Ball]] = {}

    def values(ww: int) -> list[Ball]:
        v = memo.get(ww)
        if v is None:
            v = [specfun.stirling_tail(kind, order, x, ww) for x in pts]
            memo[ww] = v
        return v

    for j in range(depth + 1):
        def signed_min(ww: int, j=j) -> tuple[Ball, Ball]:
            seq = values(ww)
            for _ in range(j):
                seq = [sub(b, a, ww) for a, b in zip(seq, seq[1:])]
            if j % 2 == 1:
                seq = [sub(Ball.from_int(0), v, ww) for v in seq]
            worst = seq[0]
            for v in seq[1:]:
                worst = _min_by_mid(worst, v)
            return Ball.from_int(0), worst

        verdict, margin, w = _decide_less(signed_min, w0)
        rep.append(CheckRecord(
            check="cm_sign", params=(("kind", kind), ("order", order), ("depth", j)),
            verdict=verdict, margin=margin, precision_bits=w,
        ))
    return rep


# ---------------------------------------------------------------------------
# equality witnesses
# ---------------------------------------------------------------------------

def _symbolic_identities() -> list[tuple[str, bool]]:
    """Each declared equality case reduced to rational-function algebra."""
    g = PolyFraction.symbol()

    out = []
    # quadratic-window lower endpoint at n = 1 collapses to (1 - 2 g)/2
    lhs = -1 / (12 + 2 * (7 - 12 * g) / (2 * g - 1))
    out.append(("main", lhs == (1 - 2 * g) / 2))

    # shifted-reciprocal lower endpoint at n = 1 collapses to 1 - g
    lhs = 1 / (2 + (1 / (1 - g) - 2))
    out.append(("toth_sharp", lhs == 1 - g))

    # same algebra with the symbol standing for ln 2
    ln2 = PolyFraction.symbol()
    lhs = 1 / (2 + (1 / (1 - ln2) - 2))
    out.append(("alt_tail", lhs == 1 - ln2))

    # with s = sqrt(6(1 - g - ln(3/2))), the lower endpoint at n = 1 is s^2/6,
    # which is the target by the definition of s
    s = PolyFraction.symbol()
    lhs = 1 / (24 * (1 / (2 * s)) * (1 / (2 * s)))
    out.append(("chen", lhs == s * s / 6))

    # with L = ln(sqrt(e) - 1), the n = 1 lower endpoint is (1 + L) - L = 1 = H(1)
    big_l = PolyFraction.symbol()
    out.append(("batir", (1 + big_l) - big_l == PolyFraction.const(1)))

    # ln(e^(1-g)) = 1 - g reduces the n = 1 upper endpoint to (1 - g) + g = 1
    out.append(("qi_guo_family", (1 - g) + g == PolyFraction.const(1)))

    # H(1) - ln 1 = 1 and 1 + ln(1)/2 = 1 are exact facts since ln 1 = 0
    ln1 = Fraction(0)
    out.append(("klamkin", specfun.harmonic_exact(1) - ln1 == 1))
    out.append(("odd", specfun.odd_harmonic_exact(1) == 1 + ln1 / 2))
    return out


def equality_witnesses(prec=DEFAULT_PRECISION) -> VerificationReport:
    """Algebraic plus numeric certification of every declared equality case."""
    rep = VerificationReport()
    for bound_id, ok in _symbolic_identities():
        rep.append(CheckRecord(
            check="identity", params=(("bound", bound_id),),
            verdict=Verdict.PASS if ok else Verdict.FAIL,
            margin=None, precision_bits=0,
        ))
    for spec in catalog():
        for side, points in (("lower", spec.lower_equalities), ("upper", spec.upper_equalities)):
            for n in sorted(points):
                chk = check_bound(spec.bound_id, n, prec)
                rep.append(CheckRecord(
                    check="equality_numeric",
                    params=(("bound", spec.bound_id), ("side", side), ("n", n)),
                    verdict=Verdict.PASS if chk.verdict is Verdict.EQUALITY else Verdict.FAIL,
                    margin=chk.margin, precision_bits=chk.precision_bits,
                ))
    return rep


# ---------------------------------------------------------------------------
# the full sweep
# ---------------------------------------------------------------------------

def _bound_record(bound_id: str, n: int, prec) -> CheckRecord:
    chk = check_bound(bound_id, n, prec)
    return CheckRecord(
        check="bound", params=(("id", bound_id), ("n", n)),
        verdict=chk.verdict, margin=chk.margin, precision_bits=chk.precision_bits,
    )


def _bounds_chunk(args: tuple[int, int, int]) -> list[CheckRecord]:
    n_lo, n_hi, p = args
    ids = bound_ids()
    out = []
    for n in range(n_lo, n_hi):
        for bid in ids:
            out.append(_bound_record(bid, n, p))
    return out


def _sweep_bounds(max_n: int, p: int, jobs: int) -> list[CheckRecord]:
    if jobs > 1 and max_n >= 4 * jobs:
        chunk = -(-max_n // (4 * jobs))
        args = [
            (lo, min(lo + chunk, max_n + 1), p)
            for lo in range(1, max_n + 1, chunk)
        ]
        try:
            ctx = multiprocessing.get_context("fork")
        except ValueError:
            ctx = None
        if ctx is not None:
            with ctx.Pool(processes=jobs) as pool:
                parts = pool.map(_bounds_chunk, args)
            records = [r for part in parts for r in part]
        else:
            records = _bounds_chunk((1, max_n + 1, p))
    else:
        records = _bounds_chunk((1, max_n + 1, p))
    index = {bid: i for i, bid in enumerate(bound_ids())}
    records.sort(key=lambda r: (index[r.params_dict()["id"]], r.params_dict()["n"]))
    return records


def verify_all(
    max_n: int,
    prec=DEFAULT_PRECISION,
    checks: Iterable[str] | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Run the catalog sweep plus every auxiliary verification.

    Results are deterministic for fixed arguments regardless of jobs: the
    bound sweep fans out over worker processes and reassembles in catalog
    order, and all other checks run serially in a fixed sequence.
    """
    if max_n < 3:
        raise ValueError("max_n must be >= 3")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    selected = tuple(checks) if checks is not None else CHECK_NAMES
    unknown = [c for c in selected if c not in CHECK_NAMES]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    p = bits_of(prec)

    rep = VerificationReport()
    if "bounds" in selected:
        rep.extend(_sweep_bounds(max_n, p, jobs))
    if "sharpness" in selected:
        rep.extend(sharpness_main(max_n, p).records)
    if "g_positivity" in selected:
        rep.extend(g_positivity(None, p).records)
    if "epsilon" in selected:
        rep.extend(epsilon_window(max_n, p).records)
    if "refinement" in selected:
        rep.extend(refinement_check(max_n, p).records)
    if "alt_tail" in selected:
        rep.extend(alt_tail_constants(max_n, p).records)
    if "cm" in selected:
        grid = list(range(1, 21))
        rep.extend(cm_spotcheck("F", 2, grid, 4, p).records)
        rep.extend(cm_spotcheck("G", 1, grid, 4, p).records)
    if "equality" in selected:
        rep.extend(equality_witnesses(p).records)
    return rep
