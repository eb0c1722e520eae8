"""Catalog of two-sided harmonic-number bounds with certified checking.

Each catalog entry pins down, for a stated target quantity, a lower and an
upper expression in n, the set of n where an endpoint is attained exactly,
and any sharp constants together with the decimal window they are known
to lie in.  Checking a bound at some n compares three enclosures — lower,
target, upper — and only returns pass/fail when the balls decide the
comparison, escalating precision (doubling, capped) while they overlap.

At a declared equality point the check instead certifies that the margin
ball straddles zero with radius below 10^-30; the closed-form reasons for
those equalities are verified separately (see verify.equality_witnesses).

Targets:
  H                        H(n)
  H_minus_ln_gamma         H(n) - ln n - g
  H_minus_lnhalf_gamma     H(n) - ln(n + 1/2) - g
  H_minus_ln_half_n_gamma  H(n) - ln n - 1/(2n) - g
  odd_harmonic             1 + 1/3 + ... + 1/(2n-1)
  alternating_tail         |ln 2 - (1 - 1/2 + ... +- 1/n)|
where g is the Euler--Mascheroni constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import elementary, specfun
from .ball import (
    Ball,
    DEFAULT_PRECISION,
    MAX_PRECISION,
    Order,
    add,
    bits_of,
    compare,
    mul,
    neg,
    recip,
    scale2,
    sub,
    _dyadic_cmp,
)
from .report import Verdict

__all__ = [
    "BoundSpec",
    "SharpConstant",
    "TargetValue",
    "BoundCheck",
    "TARGETS",
    "EQUALITY_RADIUS",
    "catalog",
    "catalog_map",
    "bound_ids",
    "target_value",
    "evaluate_bound",
    "check_bound",
]

# radius threshold for certifying a declared equality endpoint
EQUALITY_RADIUS = Fraction(1, 10**30)


@dataclass(frozen=True)
class TargetValue:
    """A named quantity that bounds in the catalog enclose."""

    target_id: str
    description: str


TARGETS: dict[str, TargetValue] = {
    t.target_id: t
    for t in (
        TargetValue("H", "harmonic number H(n)"),
        TargetValue("H_minus_ln_gamma", "H(n) - ln n - gamma"),
        TargetValue("H_minus_lnhalf_gamma", "H(n) - ln(n + 1/2) - gamma"),
        TargetValue("H_minus_ln_half_n_gamma", "H(n) - ln n - 1/(2n) - gamma"),
        TargetValue("odd_harmonic", "sum of 1/(2k-1) for k = 1..n"),
        TargetValue("alternating_tail", "|ln 2 - alternating harmonic partial sum|"),
    )
}


@dataclass(frozen=True)
class SharpConstant:
    """A best-possible constant and the decimal window it must lie in."""

    name: str
    window_lo: Fraction
    window_hi: Fraction
    value: Callable[[int], Ball]


@dataclass(frozen=True)
class BoundSpec:
    """One two-sided bound: target, evaluators, equality sets, constants."""

    bound_id: str
    description: str
    target: str
    domain_min: int
    lower: Callable[[int, int], Ball]
    upper: Callable[[int, int], Ball]
    lower_equalities: frozenset[int] = frozenset()
    upper_equalities: frozenset[int] = frozenset()
    sharp_constants: tuple[SharpConstant, ...] = ()
    notes: str = ""


@dataclass(frozen=True)
class BoundCheck:
    """Result of checking one bound at one n."""

    bound_id: str
    n: int
    verdict: Verdict
    lower: Ball
    target: Ball
    upper: Ball
    margin: Ball
    precision_bits: int
    equality_side: str = ""

    def verdict_label(self) -> str:
        if self.verdict is Verdict.EQUALITY and self.equality_side:
            return f"equality({self.equality_side})"
        return self.verdict.value


# ---------------------------------------------------------------------------
# shared sub-expressions, cached per working precision
# ---------------------------------------------------------------------------

def _gamma(w: int) -> Ball:
    return specfun.euler_gamma(w)


def _ln_int(n: int, w: int) -> Ball:
    return elementary.ln(Ball.from_int(n), w)


def _ln_half_int(n: int, w: int) -> Ball:
    # ln(n + 1/2), the argument is exactly dyadic
    return elementary.ln(Ball(2 * n + 1, -1), w)


@lru_cache(maxsize=512)
def _ln_expm1_recip(np1: int, w: int) -> Ball:
    """ln(e^(1/np1) - 1), shared by both exponential-form bound sides."""
    e = elementary.exp(Ball.from_fraction(Fraction(1, np1), w), w)
    return elementary.ln(sub(e, Ball.from_int(1), w), w)


@lru_cache(maxsize=64)
def _exp_one_minus_gamma(w: int) -> Ball:
    return elementary.exp(sub(Ball.from_int(1), _gamma(w), w), w)


@lru_cache(maxsize=64)
def _toth_sharp_shift(w: int) -> Ball:
    # 1/(1 - g) - 2
    inv = recip(sub(Ball.from_int(1), _gamma(w), w), w)
    return sub(inv, Ball.from_int(2), w)


@lru_cache(maxsize=64)
def _alt_tail_shift(w: int) -> Ball:
    # 1/(1 - ln 2) - 2
    inv = recip(sub(Ball.from_int(1), elementary.ln2_ball(w), w), w)
    return sub(inv, Ball.from_int(2), w)


@lru_cache(maxsize=64)
def _chen_shift(w: int) -> Ball:
    # 1/(2 sqrt(6 c)) - 1 with c = 1 - g - ln(3/2)
    c = sub(sub(Ball.from_int(1), _gamma(w), w), elementary.ln(Ball(3, -1), w), w)
    root = elementary.sqrt(mul(Ball.from_int(6), c, w), w)
    return sub(recip(scale2(root, 1), w), Ball.from_int(1), w)


@lru_cache(maxsize=64)
def _main_shift(w: int) -> Ball:
    # 2 (7 - 12 g) / (2 g - 1)
    g = _gamma(w)
    num = sub(Ball.from_int(7), mul(Ball.from_int(12), g, w), w)
    den = sub(scale2(g, 1), Ball.from_int(1), w)
    return mul(scale2(num, 1), recip(den, w), w)


@lru_cache(maxsize=64)
def _batir_const(w: int) -> Ball:
    # 1 + ln(e^(1/2) - 1)
    e_half = elementary.exp(Ball(1, -1), w)
    return add(Ball.from_int(1), elementary.ln(sub(e_half, Ball.from_int(1), w), w), w)


# ---------------------------------------------------------------------------
# target evaluation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _target_cached(target_id: str, n: int, w: int) -> Ball:
    if target_id == "H":
        return Ball.from_fraction(specfun.harmonic_exact(n), w)
    if target_id == "odd_harmonic":
        return Ball.from_fraction(specfun.odd_harmonic_exact(n), w)
    if target_id == "alternating_tail":
        return specfun.alternating_tail(n, w)
    if target_id == "H_minus_ln_gamma":
        h = Ball.from_fraction(specfun.harmonic_exact(n), w)
        return sub(sub(h, _ln_int(n, w), w), _gamma(w), w)
    if target_id == "H_minus_lnhalf_gamma":
        h = Ball.from_fraction(specfun.harmonic_exact(n), w)
        return sub(sub(h, _ln_half_int(n, w), w), _gamma(w), w)
    if target_id == "H_minus_ln_half_n_gamma":
        # H(n) - ln n - 1/(2n) - g equals -(ln n + 1/(2n) - psi(n+1)), and the
        # gap on the right has a cancellation-free evaluator
        return neg(specfun.psi_gap(n, w))
    raise KeyError(f"unknown target: {target_id!r}")


def target_value(target_id: str, n: int, prec=DEFAULT_PRECISION) -> Ball:
    """Certified enclosure of a catalog target at integer n >= 1."""
    if target_id not in TARGETS:
        raise KeyError(f"unknown target: {target_id!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    return _target_cached(target_id, n, bits_of(prec))


# ---------------------------------------------------------------------------
# the twelve bounds
# ---------------------------------------------------------------------------

def _rat(fr: Fraction, p: int) -> Ball:
    return Ball.from_fraction(fr, p)


def _franel_lower(n: int, p: int) -> Ball:
    return _rat(Fraction(4 * n - 1, 8 * n * n), p)


def _half_recip(n: int, p: int) -> Ball:
    return _rat(Fraction(1, 2 * n), p)


def _klamkin_lower(n: int, p: int) -> Ball:
    return sub(Ball(1, -1), _gamma(p), p)


def _klamkin_upper(n: int, p: int) -> Ball:
    return sub(Ball.from_int(1), _gamma(p), p)


def _odd_lower(n: int, p: int) -> Ball:
    return scale2(_ln_int(2 * n + 1, p), -1)


def _odd_upper(n: int, p: int) -> Ball:
    return add(Ball.from_int(1), scale2(_ln_int(2 * n - 1, p), -1), p)


def _young_lower(n: int, p: int) -> Ball:
    return _rat(Fraction(1, 2 * (n + 1)), p)


def _detemple_lower(n: int, p: int) -> Ball:
    return _rat(Fraction(1, 24 * (n + 1) ** 2), p)


def _detemple_upper(n: int, p: int) -> Ball:
    return _rat(Fraction(1, 24 * n * n), p)


def _toth_lower(n: int, p: int) -> Ball:
    return _rat(Fraction(5, 10 * n + 2), p)


def _toth_upper(n: int, p: int) -> Ball:
    return _rat(Fraction(3, 6 * n + 1), p)


def _toth_sharp_lower(n: int, p: int) -> Ball:
    return recip(add(Ball.from_int(2 * n), _toth_sharp_shift(p), p), p)


def _alt_tail_lower(n: int, p: int) -> Ball:
    return recip(add(Ball.from_int(2 * n), _alt_tail_shift(p), p), p)


def _alt_tail_upper(n: int, p: int) -> Ball:
    return _rat(Fraction(1, 2 * n + 1), p)


def _batir_lower(n: int, p: int) -> Ball:
    return sub(_batir_const(p), _ln_expm1_recip(n + 1, p), p)


def _batir_upper(n: int, p: int) -> Ball:
    return sub(_gamma(p), _ln_expm1_recip(n + 1, p), p)


def _qi_guo_lower(n: int, p: int) -> Ball:
    return add(_ln_half_int(n, p), _gamma(p), p)


def _qi_guo_upper(n: int, p: int) -> Ball:
    arg = add(Ball.from_int(n - 1), _exp_one_minus_gamma(p), p)
    return add(elementary.ln(arg, p), _gamma(p), p)


def _chen_lower(n: int, p: int) -> Ball:
    s = add(Ball.from_int(n), _chen_shift(p), p)
    return recip(mul(Ball.from_int(24), mul(s, s, p), p), p)


def _chen_upper(n: int, p: int) -> Ball:
    return _rat(Fraction(1, 6 * (2 * n + 1) ** 2), p)


def _main_lower(n: int, p: int) -> Ball:
    den = add(Ball.from_int(12 * n * n), _main_shift(p), p)
    return neg(recip(den, p))


def _main_upper(n: int, p: int) -> Ball:
    return _rat(Fraction(-5, 60 * n * n + 6), p)


def _window(lo: str, hi: str) -> tuple[Fraction, Fraction]:
    return Fraction(lo), Fraction(hi)


def _build_catalog() -> tuple[BoundSpec, ...]:
    g_win = _window("0.5772", "0.5773")
    specs = (
        BoundSpec(
            bound_id="franel",
            description="1/(2n) - 1/(8n^2) < H(n) - ln n - g < 1/(2n)",
            target="H_minus_ln_gamma",
            domain_min=1,
            lower=_franel_lower,
            upper=_half_recip,
        ),
        BoundSpec(
            bound_id="klamkin",
            description="1/2 < H(n) - ln n < 1, recentred by g",
            target="H_minus_ln_gamma",
            domain_min=1,
            lower=_klamkin_lower,
            upper=_klamkin_upper,
            upper_equalities=frozenset({1}),
            notes=(
                "The classical statement is strict on both sides; the upper "
                "endpoint is attained at n = 1 (H(1) - ln 1 = 1), so this "
                "catalog encodes the upper side as non-strict there."
            ),
        ),
        BoundSpec(
            bound_id="odd",
            description="(1/2) ln(2n+1) < sum 1/(2k-1) <= 1 + (1/2) ln(2n-1)",
            target="odd_harmonic",
            domain_min=1,
            lower=_odd_lower,
            upper=_odd_upper,
            upper_equalities=frozenset({1}),
            notes="Upper endpoint attained at n = 1 since ln 1 = 0.",
        ),
        BoundSpec(
            bound_id="young",
            description="1/(2(n+1)) < H(n) - ln n - g < 1/(2n)",
            target="H_minus_ln_gamma",
            domain_min=1,
            lower=_young_lower,
            upper=_half_recip,
        ),
        BoundSpec(
            bound_id="detemple",
            description="1/(24(n+1)^2) < H(n) - ln(n+1/2) - g < 1/(24 n^2)",
            target="H_minus_lnhalf_gamma",
            domain_min=1,
            lower=_detemple_lower,
            upper=_detemple_upper,
        ),
        BoundSpec(
            bound_id="toth",
            description="1/(2n + 2/5) < H(n) - ln n - g < 1/(2n + 1/3)",
            target="H_minus_ln_gamma",
            domain_min=1,
            lower=_toth_lower,
            upper=_toth_upper,
            sharp_constants=(
                SharpConstant(
                    "upper_shift",
                    *_window("0.3333", "0.3334"),
                    value=lambda p: Ball.from_fraction(Fraction(1, 3), p),
                ),
            ),
            notes="The upper shift 1/3 is best possible; 2/5 is not.",
        ),
        BoundSpec(
            bound_id="toth_sharp",
            description="1/(2n + a) <= H(n) - ln n - g < 1/(2n + 1/3), a = 1/(1-g) - 2",
            target="H_minus_ln_gamma",
            domain_min=1,
            lower=_toth_sharp_lower,
            upper=_toth_upper,
            lower_equalities=frozenset({1}),
            sharp_constants=(
                SharpConstant("lower_shift", *_window("0.3652", "0.3653"), value=_toth_sharp_shift),
                SharpConstant(
                    "upper_shift",
                    *_window("0.3333", "0.3334"),
                    value=lambda p: Ball.from_fraction(Fraction(1, 3), p),
                ),
            ),
            notes="Lower shift tuned so the bound is exact at n = 1.",
        ),
        BoundSpec(
            bound_id="alt_tail",
            description="1/(2n + a) <= |ln 2 - S_n| < 1/(2n + 1), a = 1/(1-ln 2) - 2",
            target="alternating_tail",
            domain_min=1,
            lower=_alt_tail_lower,
            upper=_alt_tail_upper,
            lower_equalities=frozenset({1}),
            sharp_constants=(
                SharpConstant("lower_shift", *_window("1.2588", "1.2590"), value=_alt_tail_shift),
                SharpConstant(
                    "upper_shift",
                    *_window("1", "1"),
                    value=lambda p: Ball.from_int(1),
                ),
            ),
            notes="Both shifts best possible; the lower one is exact at n = 1.",
        ),
        BoundSpec(
            bound_id="batir",
            description="1 + ln(sqrt(e) - 1) - ln(e^(1/(n+1)) - 1) <= H(n) < g - ln(e^(1/(n+1)) - 1)",
            target="H",
            domain_min=1,
            lower=_batir_lower,
            upper=_batir_upper,
            lower_equalities=frozenset({1}),
            sharp_constants=(
                SharpConstant("lower_const", *_window("0.5672", "0.5673"), value=_batir_const),
                SharpConstant("upper_const", *g_win, value=_gamma),
            ),
            notes="At n = 1 the two logarithms coincide and the lower side gives H(1) = 1 exactly.",
        ),
        BoundSpec(
            bound_id="qi_guo_family",
            description="ln(n + 1/2) + g < H(n) <= ln(n + e^(1-g) - 1) + g",
            target="H",
            domain_min=1,
            lower=_qi_guo_lower,
            upper=_qi_guo_upper,
            upper_equalities=frozenset({1}),
            sharp_constants=(
                SharpConstant("lower_offset", *_window("0.5", "0.5"), value=lambda p: Ball(1, -1)),
                SharpConstant(
                    "upper_offset",
                    *_window("0.5262", "0.5263"),
                    value=lambda p: sub(_exp_one_minus_gamma(p), Ball.from_int(1), p),
                ),
            ),
            notes="Offsets 1/2 and e^(1-g) - 1 are both best possible.",
        ),
        BoundSpec(
            bound_id="chen",
            description="1/(24(n+a)^2) <= H(n) - ln(n+1/2) - g < 1/(24(n+1/2)^2), a = 1/(2 sqrt(6(1-g-ln(3/2)))) - 1",
            target="H_minus_lnhalf_gamma",
            domain_min=1,
            lower=_chen_lower,
            upper=_chen_upper,
            lower_equalities=frozenset({1}),
            sharp_constants=(
                SharpConstant("lower_shift", *_window("0.5510", "0.5511"), value=_chen_shift),
                SharpConstant(
                    "upper_shift",
                    *_window("0.5", "0.5"),
                    value=lambda p: Ball(1, -1),
                ),
            ),
            notes="Shift a chosen so the lower side is exact at n = 1; 1/2 is the limiting shift.",
        ),
        BoundSpec(
            bound_id="main",
            description="-1/(12n^2 + A) <= H(n) - ln n - 1/(2n) - g < -1/(12n^2 + 6/5), A = 2(7-12g)/(2g-1)",
            target="H_minus_ln_half_n_gamma",
            domain_min=1,
            lower=_main_lower,
            upper=_main_upper,
            lower_equalities=frozenset({1}),
            sharp_constants=(
                SharpConstant("lower_shift", *_window("0.9507", "0.9508"), value=_main_shift),
                SharpConstant(
                    "upper_shift",
                    *_window("1.2", "1.2"),
                    value=lambda p: Ball.from_fraction(Fraction(6, 5), p),
                ),
            ),
            notes=(
                "Quadratic-denominator window; A makes the lower side exact at "
                "n = 1 and 6/5 is the limit value, so both constants are best "
                "possible."
            ),
        ),
    )
    return specs


_CATALOG: tuple[BoundSpec, ...] = _build_catalog()
_CATALOG_MAP = {s.bound_id: s for s in _CATALOG}


def catalog() -> tuple[BoundSpec, ...]:
    """All bounds in stable order."""
    return _CATALOG


def catalog_map() -> dict[str, BoundSpec]:
    return dict(_CATALOG_MAP)


def bound_ids() -> tuple[str, ...]:
    return tuple(s.bound_id for s in _CATALOG)


def evaluate_bound(bound_id: str, n: int, prec=DEFAULT_PRECISION) -> tuple[Ball, Ball]:
    """Enclosures of the lower and upper expressions of a bound at n."""
    spec = _CATALOG_MAP.get(bound_id)
    if spec is None:
        raise KeyError(f"unknown bound: {bound_id!r}")
    if n < spec.domain_min:
        raise ValueError(f"bound {bound_id!r} needs n >= {spec.domain_min}")
    p = bits_of(prec)
    return spec.lower(n, p), spec.upper(n, p)


# ---------------------------------------------------------------------------
# checking
# ---------------------------------------------------------------------------

_SIDE_OK = "ok"
_SIDE_EQ = "eq"
_SIDE_FAIL = "fail"
_SIDE_OPEN = "open"


def _side_state(low: Ball, high: Ball, expect_equality: bool, p: int) -> str:
    """Classify the claim low <= high (strict unless equality declared)."""
    if expect_equality:
        d = sub(high, low, p)
        if d.is_negative():
            return _SIDE_FAIL
        if d.is_positive():
            # the declared equality point turned out strict; the inequality
            # itself still holds, so treat as a plain pass
            return _SIDE_OK
        if d.rad_fraction() < EQUALITY_RADIUS:
            return _SIDE_EQ
        return _SIDE_OPEN
    c = compare(low, high)
    if c is Order.CERTAINLY_LESS:
        return _SIDE_OK
    if c is Order.CERTAINLY_GREATER:
        return _SIDE_FAIL
    return _SIDE_OPEN


def _min_by_mid(a: Ball, b: Ball) -> Ball:
    return a if _dyadic_cmp(a.man, a.exp, b.man, b.exp) <= 0 else b


def check_bound(
    bound_id: str,
    n: int,
    prec=DEFAULT_PRECISION,
    max_prec=MAX_PRECISION,
) -> BoundCheck:
    """Check one bound at one n, escalating precision until decided."""
    spec = _CATALOG_MAP.get(bound_id)
    if spec is None:
        raise KeyError(f"unknown bound: {bound_id!r}")
    if n < spec.domain_min:
        raise ValueError(f"bound {bound_id!r} needs n >= {spec.domain_min}")
    p = bits_of(prec)
    cap = bits_of(max_prec)
    while True:
        t = _target_cached(spec.target, n, p)
        lo = spec.lower(n, p)
        hi = spec.upper(n, p)
        s_lo = _side_state(lo, t, n in spec.lower_equalities, p)
        s_hi = _side_state(t, hi, n in spec.upper_equalities, p)
        margin = _min_by_mid(sub(t, lo, p), sub(hi, t, p))
        if _SIDE_FAIL in (s_lo, s_hi):
            verdict = Verdict.FAIL
        elif _SIDE_OPEN in (s_lo, s_hi):
            if p < cap:
                p = min(2 * p, cap)
                continue
            verdict = Verdict.UNDECIDED
        elif _SIDE_EQ in (s_lo, s_hi):
            verdict = Verdict.EQUALITY
        else:
            verdict = Verdict.PASS
        sides = [name for name, s in (("lower", s_lo), ("upper", s_hi)) if s == _SIDE_EQ]
        return BoundCheck(
            bound_id=bound_id,
            n=n,
            verdict=verdict,
            lower=lo,
            target=t,
            upper=hi,
            margin=margin,
            precision_bits=p,
            equality_side=",".join(sides) if verdict is Verdict.EQUALITY else "",
        )
