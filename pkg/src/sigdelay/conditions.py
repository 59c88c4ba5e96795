"""Delay conditions: parameter tuples, consistency predicates, checkers.

A delay condition relates the input u and output x of a delay buffer by
a system of pointwise inequalities between sliding-window combinations
of the two signals.  Membership is decided exactly: each clause
``lhs <= rhs`` is turned into the step function lhs . not(rhs), whose
support is the violation set; the condition holds iff every violation
set is empty.  ``first_violation`` reports the infimum of the earliest
one, with a flag saying whether it is attained.

Consistency predicates (cc_*) are the closed-form parameter
inequalities equivalent to "a solution exists for every input".  A
checker invoked with inconsistent parameters raises
InconsistentModelError rather than reporting a trace failure, so
callers can tell a malformed model from a bad trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .stepfn import (
    IntervalSet,
    RationalLike,
    StepFunction,
    as_signal,
    as_time,
    window,
    window_inf,
    window_inf_halfopen,
    window_sup,
    window_sup_halfopen,
)


class InconsistentModelError(ValueError):
    """The model's consistency condition fails; no trace can be judged."""


# ---------------------------------------------------------------------------
# Parameter tuples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BdcParams:
    """Memories (thresholds for cancellation) and upper delay bounds.

    The lower bounds d_f - m_f (rising) and d_r - m_r (falling) are
    derived, not stored.
    """

    m_r: Fraction
    d_r: Fraction
    m_f: Fraction
    d_f: Fraction

    def __post_init__(self):
        for name in ("m_r", "d_r", "m_f", "d_f"):
            object.__setattr__(self, name, as_time(getattr(self, name)))
        if not (0 <= self.m_r <= self.d_r and 0 <= self.m_f <= self.d_f):
            raise ValueError(f"need 0 <= m_r <= d_r and 0 <= m_f <= d_f, got {self}")


@dataclass(frozen=True)
class AicParams:
    """Absolute inertia: minimum hold times after a rise / a fall."""

    delta_r: Fraction
    delta_f: Fraction

    def __post_init__(self):
        for name in ("delta_r", "delta_f"):
            object.__setattr__(self, name, as_time(getattr(self, name)))
        if self.delta_r < 0 or self.delta_f < 0:
            raise ValueError(f"inertia parameters must be >= 0, got {self}")


@dataclass(frozen=True)
class RicParams:
    """Relative inertia: a switch at t needs the input held over the
    window [t-delta, t-delta+mu]."""

    mu_r: Fraction
    delta_r: Fraction
    mu_f: Fraction
    delta_f: Fraction

    def __post_init__(self):
        for name in ("mu_r", "delta_r", "mu_f", "delta_f"):
            object.__setattr__(self, name, as_time(getattr(self, name)))
        if not (0 <= self.mu_r <= self.delta_r and 0 <= self.mu_f <= self.delta_f):
            raise ValueError(f"need 0 <= mu <= delta for both edges, got {self}")


# ---------------------------------------------------------------------------
# Delay models (tagged union)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sc:
    pass


@dataclass(frozen=True)
class Fixed:
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d", as_time(self.d))
        if self.d < 0:
            raise ValueError("fixed delay needs d >= 0")


@dataclass(frozen=True)
class Bdc:
    p: BdcParams


@dataclass(frozen=True)
class BdcPrime:
    """Upper bounded, lower unbounded delays: windows [t-d, t)."""

    d_r: Fraction
    d_f: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d_r", as_time(self.d_r))
        object.__setattr__(self, "d_f", as_time(self.d_f))
        if self.d_r <= 0 or self.d_f <= 0:
            raise ValueError("BDC' needs d_r > 0 and d_f > 0")


@dataclass(frozen=True)
class WindowAnd:
    """Deterministic delay x(t) = inf of u over [t-d, t-d+m]."""

    m: Fraction
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", as_time(self.m))
        object.__setattr__(self, "d", as_time(self.d))
        if not 0 <= self.m <= self.d:
            raise ValueError("window delay needs 0 <= m <= d")


@dataclass(frozen=True)
class WindowOr:
    """Deterministic delay x(t) = sup of u over [t-d, t-d+m]."""

    m: Fraction
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", as_time(self.m))
        object.__setattr__(self, "d", as_time(self.d))
        if not 0 <= self.m <= self.d:
            raise ValueError("window delay needs 0 <= m <= d")


@dataclass(frozen=True)
class Aic:
    a: AicParams


@dataclass(frozen=True)
class AicPrime:
    """Half-open hold windows [t, t+delta): hold >= delta instead of > delta."""

    a: AicParams


@dataclass(frozen=True)
class Ric:
    r: RicParams


@dataclass(frozen=True)
class RicPrime:
    """Lookback windows [t-delta, t); delta = 0 is the trivial condition."""

    r: RicParams


@dataclass(frozen=True)
class Baidc:
    p: BdcParams
    a: AicParams


@dataclass(frozen=True)
class Bridc:
    p: BdcParams
    r: RicParams


@dataclass(frozen=True)
class Dbridc:
    """Deterministic: the bound and inertia windows share parameters."""

    p: BdcParams


@dataclass(frozen=True)
class SdbridcPrime:
    """Symmetric deterministic variant written as a single left-derivative
    equation with an open lookback window free of input switches."""

    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d", as_time(self.d))
        if self.d <= 0:
            raise ValueError("SDBRIDC' needs d > 0")


DelayModel = Union[Sc, Fixed, Bdc, BdcPrime, WindowAnd, WindowOr, Aic, AicPrime,
                   Ric, RicPrime, Baidc, Bridc, Dbridc, SdbridcPrime]

DETERMINISTIC_MODELS = (Fixed, WindowAnd, WindowOr, Dbridc, SdbridcPrime)


# ---------------------------------------------------------------------------
# Check reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    time: Optional[Fraction]  # None: the violation set reaches -oo
    attained: bool            # is the infimum itself a violating instant
    clause: str
    net: Optional[str] = None  # set by circuit-level conformance checks


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    first_violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.ok


def _report(violations: list[tuple[IntervalSet, str]],
            horizon: Optional[Fraction] = None) -> CheckReport:
    """Combine per-clause violation sets into a report."""
    best: Optional[Violation] = None
    for vset, clause in violations:
        if horizon is not None:
            vset = vset.clipped_below(horizon)
        if not vset:
            continue
        t, attained = vset.infimum()
        cand = Violation(t, attained, clause)
        if best is None or _violation_key(cand) < _violation_key(best):
            best = cand
    return CheckReport(best is None, best)


def _violation_key(v: Violation):
    if v.time is None:
        return (0, Fraction(0), 0)
    return (1, v.time, 0 if v.attained else 1)


def _le(lhs: StepFunction, rhs: StepFunction, clause: str) -> tuple[IntervalSet, str]:
    return (lhs & ~rhs).support(), clause


def _eq(lhs: StepFunction, rhs: StepFunction, clause: str) -> tuple[IntervalSet, str]:
    return (lhs ^ rhs).support(), clause


# ---------------------------------------------------------------------------
# Consistency predicates
# ---------------------------------------------------------------------------

def cc_bdc(p: BdcParams) -> bool:
    """Solvable for every input iff d_r - m_r <= d_f and d_f - m_f <= d_r."""
    return p.d_r - p.m_r <= p.d_f and p.d_f - p.m_f <= p.d_r


def cc_baidc(p: BdcParams, a: AicParams) -> bool:
    return cc_bdc(p) and a.delta_r + a.delta_f <= p.m_r + p.m_f


def cc_bridc(p: BdcParams, r: RicParams) -> tuple[bool, Optional[str]]:
    """Four-case disjunction; returns the first satisfied clause a..d."""
    mr, dr, mf, df = p.m_r, p.d_r, p.m_f, p.d_f
    ur, er, uf, ef = r.mu_r, r.delta_r, r.mu_f, r.delta_f
    clauses = {
        "a": (df - mf <= er <= dr <= er - ur + mr
              and dr - mr <= ef <= df <= ef - uf + mf),
        "b": (dr - mr + ur <= er <= df - mf <= dr
              and df - mf + uf <= ef <= dr - mr <= df),
        "c": (df - mf <= er <= dr - mr + ur <= dr
              and dr - mr <= ef <= df - mf + uf <= df),
        "d": (er <= df - mf <= er + mr - ur <= dr
              and ef <= dr - mr <= ef + mf - uf <= df),
    }
    for name in "abcd":
        if clauses[name]:
            return True, name
    return False, None


def zeno_free(r: RicParams) -> bool:
    """No families of accepted traces with arbitrarily close switches."""
    return r.delta_f > r.delta_r - r.mu_r and r.delta_r > r.delta_f - r.mu_f


# ---------------------------------------------------------------------------
# Parameter algebra
# ---------------------------------------------------------------------------

def compose_bdc(p: BdcParams, q: BdcParams) -> BdcParams:
    """Serial connection of bounded delays: parameters add."""
    for params in (p, q):
        if not cc_bdc(params):
            raise InconsistentModelError(f"CC_BDC fails for {params}")
    return BdcParams(p.m_r + q.m_r, p.d_r + q.d_r, p.m_f + q.m_f, p.d_f + q.d_f)


def bdc_includes(p: BdcParams, q: BdcParams) -> bool:
    """Every trace accepted under p is accepted under q."""
    return (q.d_r - q.m_r <= p.d_r - p.m_r <= p.d_f <= q.d_f
            and q.d_f - q.m_f <= p.d_f - p.m_f <= p.d_r <= q.d_r)


def bdc_deterministic(p: BdcParams) -> bool:
    if not cc_bdc(p):
        raise InconsistentModelError(f"CC_BDC fails for {p}")
    return p.m_r == p.m_f == 0


def bdc_symmetric(p: BdcParams) -> bool:
    if not cc_bdc(p):
        raise InconsistentModelError(f"CC_BDC fails for {p}")
    return p.d_r == p.d_f and p.m_r == p.m_f


def convert_minmax(d_r_min: RationalLike, d_r_max: RationalLike,
                   d_f_min: RationalLike, d_f_max: RationalLike) -> BdcParams:
    """Translate min/max transition-delay bounds into memory form."""
    rn, rx = as_time(d_r_min), as_time(d_r_max)
    fn, fx = as_time(d_f_min), as_time(d_f_max)
    if not (0 <= rn <= rx and 0 <= fn <= fx):
        raise ValueError("need 0 <= min <= max for both edges")
    if rn > fx or fn > rx:
        raise InconsistentModelError(
            "min/max bounds admit no delay: need d_r_min <= d_f_max and d_f_min <= d_r_max")
    return BdcParams(rx - fn, rx, fx - rn, fx)


# ---------------------------------------------------------------------------
# Stability and transmission delay
# ---------------------------------------------------------------------------

def check_sc(u: StepFunction, x: StepFunction) -> CheckReport:
    """Stability: if the input settles, the output settles to the same value.

    Representable signals always settle, so this reduces to comparing
    final values; the reported time is where both have settled.
    """
    as_signal(u), as_signal(x)
    if u.limit_at_infinity() == x.limit_at_infinity():
        return CheckReport(True)
    settle = max([Fraction(0), *u.bps, *x.bps])
    return CheckReport(False, Violation(settle, True, "final-value"))


def transmission_delay(u: StepFunction, x: StepFunction
                       ) -> tuple[Fraction, str]:
    """Distance between the last input switch and the last output switch.

    Returns (d, kind) with kind in {'rising','falling','unclassified'}.
    """
    if not check_sc(u, x).ok:
        raise ValueError("transmission delay needs the pair to satisfy stability")
    du, dx = u.derivative().support(), x.derivative().support()
    t1 = du.intervals[-1].hi if du else Fraction(0)
    t2 = dx.intervals[-1].hi if dx else Fraction(0)
    d = max(Fraction(0), t2 - t1)
    kind = "unclassified"
    if du and dx:
        u_rise = (~u.left_limit() & u).value(t1) == 1
        x_rise = (~x.left_limit() & x).value(t2) == 1
        u_fall = (u.left_limit() & ~u).value(t1) == 1
        x_fall = (x.left_limit() & ~x).value(t2) == 1
        if u_rise and x_rise:
            kind = "rising"
        elif u_fall and x_fall:
            kind = "falling"
    return d, kind


def check_constancy(u: StepFunction, x: StepFunction,
                    d_r: RationalLike, d_f: RationalLike) -> CheckReport:
    """x may rise at t only if u(t-d_r) = 1 and fall only if u(t-d_f) = 0."""
    d_r, d_f = as_time(d_r), as_time(d_f)
    if d_r < 0 or d_f < 0:
        raise ValueError("constancy needs d_r >= 0 and d_f >= 0")
    as_signal(u), as_signal(x)
    return _report([
        _le(x.rises(), u.shift(d_r), "rising-anticipation"),
        _le(x.falls(), ~u.shift(d_f), "falling-anticipation"),
    ])


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def bdc_lower(u: StepFunction, p: BdcParams) -> StepFunction:
    return window_inf(u, p.d_r, p.m_r)


def bdc_upper(u: StepFunction, p: BdcParams) -> StepFunction:
    return window_sup(u, p.d_f, p.m_f)


def ric_rise_permit(u: StepFunction, r: RicParams) -> StepFunction:
    return window_inf(u, r.delta_r, r.mu_r)


def ric_fall_permit(u: StepFunction, r: RicParams) -> StepFunction:
    return window_inf(~u, r.delta_f, r.mu_f)


def _fixed_clauses(u, x, model: Fixed):
    return [_eq(x, u.shift(model.d), "fixed")]


def _bdc_clauses(u, x, p: BdcParams):
    return [_le(bdc_lower(u, p), x, "lower-bound"),
            _le(x, bdc_upper(u, p), "upper-bound")]


def _bdcprime_clauses(u, x, model: BdcPrime):
    return [_le(window_inf_halfopen(u, model.d_r), x, "lower-bound"),
            _le(x, window_sup_halfopen(u, model.d_f), "upper-bound")]


def _aic_clauses(x, a: AicParams):
    hold1 = window(x, "inf", 0, a.delta_r)
    hold0 = window(~x, "inf", 0, a.delta_f)
    return [_le(x.rises(), hold1, "rise-hold"),
            _le(x.falls(), hold0, "fall-hold")]


def _aicprime_clauses(x, a: AicParams):
    hold1 = window(x, "inf", 0, a.delta_r, include_end=False)
    hold0 = window(~x, "inf", 0, a.delta_f, include_end=False)
    return [_le(x.rises(), hold1, "rise-hold"),
            _le(x.falls(), hold0, "fall-hold")]


def _ric_clauses(u, x, r: RicParams):
    return [_le(x.rises(), ric_rise_permit(u, r), "rise-permit"),
            _le(x.falls(), ric_fall_permit(u, r), "fall-permit")]


def _ricprime_clauses(u, x, r: RicParams):
    rise = window(u, "inf", -r.delta_r, 0, include_end=False)
    fall = window(~u, "inf", -r.delta_f, 0, include_end=False)
    return [_le(x.rises(), rise, "rise-permit"),
            _le(x.falls(), fall, "fall-permit")]


def _dbridc_clauses(u, x, p: BdcParams):
    # equality form: a switch happens exactly when the shared window demands
    a = bdc_lower(u, p)
    b0 = window_inf(~u, p.d_f, p.m_f)
    xl = x.left_limit()
    return [_eq(~xl & x, ~xl & a, "rise-equality"),
            _eq(xl & ~x, xl & b0, "fall-equality")]


def dbridc_form_report(u: StepFunction, x: StepFunction, p: BdcParams,
                       form: str) -> CheckReport:
    """Membership under one of the equivalent shapes of the deterministic
    bounded relative inertial delay: 'a' the sandwich plus switch
    permits, 'b' the switch equalities, 'e' the closed recursion,
    'f' the derivative equation, 'g' the single tautology.

    The forms are provably equivalent; independent implementations
    cross-check each other on random traces.
    """
    if not cc_bdc(p):
        raise InconsistentModelError(f"CC_BDC fails for {p}")
    as_signal(u), as_signal(x)
    a = bdc_lower(u, p)
    b0 = window_inf(~u, p.d_f, p.m_f)
    upper = bdc_upper(u, p)
    xl = x.left_limit()
    if form == "a":
        return _report([
            _le(a, x, "lower-bound"),
            _le(x, upper, "upper-bound"),
            _le(~xl & x, a, "rise-permit"),
            _le(xl & ~x, b0, "fall-permit"),
        ])
    if form == "b":
        return _report(_dbridc_clauses(u, x, p))
    if form == "e":
        return _report([_eq(x, a | (xl & upper), "recursion")])
    if form == "f":
        return _report([_eq(x.derivative(), (~xl & a) | (xl & b0),
                            "derivative-equation")])
    if form == "g":
        big = ((~xl & x & a) | (xl & ~x & b0)
               | (~xl & ~x & ~a) | (xl & x & ~b0))
        return _report([_eq(big, StepFunction.const(1), "tautology")])
    raise ValueError(f"unknown form {form!r}; expected one of a, b, e, f, g")


def _sdbridcprime_clauses(u, x, model: SdbridcPrime):
    quiet = ~window(u.derivative(), "sup", -model.d, 0,
                    include_start=False, include_end=False)
    rhs = (x.left_limit() ^ u.left_limit()) & quiet
    return [_eq(x.derivative(), rhs, "derivative-equation")]


def check_membership(u: Optional[StepFunction], x: StepFunction,
                     model: DelayModel,
                     horizon: Optional[RationalLike] = None) -> CheckReport:
    """Does the trace (u, x) satisfy the model's defining system everywhere?

    ``u`` may be None only for the input-free conditions (SC needs both).
    With ``horizon`` set, violations after it are ignored (the signals
    are then only claimed up to the horizon).
    """
    h = None if horizon is None else as_time(horizon)
    as_signal(x)
    if isinstance(model, (Aic, AicPrime)):
        clauses = _aic_clauses(x, model.a) if isinstance(model, Aic) \
            else _aicprime_clauses(x, model.a)
        return _report(clauses, h)
    if u is None:
        raise ValueError(f"model {model} needs an input signal")
    as_signal(u)
    if isinstance(model, Sc):
        return check_sc(u, x)
    if isinstance(model, Fixed):
        return _report(_fixed_clauses(u, x, model), h)
    if isinstance(model, WindowAnd):
        return _report([_eq(x, window_inf(u, model.d, model.m), "window-and")], h)
    if isinstance(model, WindowOr):
        return _report([_eq(x, window_sup(u, model.d, model.m), "window-or")], h)
    if isinstance(model, Bdc):
        if not cc_bdc(model.p):
            raise InconsistentModelError(f"CC_BDC fails for {model.p}")
        return _report(_bdc_clauses(u, x, model.p), h)
    if isinstance(model, BdcPrime):
        return _report(_bdcprime_clauses(u, x, model), h)
    if isinstance(model, Ric):
        return _report(_ric_clauses(u, x, model.r), h)
    if isinstance(model, RicPrime):
        return _report(_ricprime_clauses(u, x, model.r), h)
    if isinstance(model, Baidc):
        if not cc_baidc(model.p, model.a):
            raise InconsistentModelError(f"CC_BAIDC fails for {model.p}, {model.a}")
        return _report(_bdc_clauses(u, x, model.p) + _aic_clauses(x, model.a), h)
    if isinstance(model, Bridc):
        ok, _ = cc_bridc(model.p, model.r)
        if not ok:
            raise InconsistentModelError(f"CC_BRIDC fails for {model.p}, {model.r}")
        return _report(_bdc_clauses(u, x, model.p) + _ric_clauses(u, x, model.r), h)
    if isinstance(model, Dbridc):
        if not cc_bdc(model.p):
            raise InconsistentModelError(f"CC_BDC fails for {model.p}")
        return _report(_dbridc_clauses(u, x, model.p), h)
    if isinstance(model, SdbridcPrime):
        return _report(_sdbridcprime_clauses(u, x, model), h)
    raise TypeError(f"unknown delay model {model!r}")


def model_is_deterministic(model: DelayModel) -> bool:
    return isinstance(model, DETERMINISTIC_MODELS)


# ---------------------------------------------------------------------------
# Model parameter text syntax (shared with the CLI)
# ---------------------------------------------------------------------------

_MODEL_KEYS = {
    "sc": (),
    "fixed": ("d",),
    "bdc": ("mr", "dr", "mf", "df"),
    "bdcprime": ("dr", "df"),
    "wand": ("m", "d"),
    "wor": ("m", "d"),
    "aic": ("dr", "df"),
    "aicprime": ("dr", "df"),
    "ric": ("mur", "deltar", "muf", "deltaf"),
    "ricprime": ("mur", "deltar", "muf", "deltaf"),
    "baidc": ("mr", "dr", "mf", "df", "deltar", "deltaf"),
    "bridc": ("mr", "dr", "mf", "df", "mur", "deltar", "muf", "deltaf"),
    "dbridc": ("mr", "dr", "mf", "df"),
    "sdbridc": ("d",),
}


def parse_model(text: str) -> DelayModel:
    """Parse a model spec like 'bdc mr=1 dr=2 mf=1 df=2'.

    Numbers are exact rationals (decimals or p/q).
    """
    tokens = text.split()
    if not tokens:
        raise ValueError("empty model spec")
    kind = tokens[0].lower()
    if kind not in _MODEL_KEYS:
        raise ValueError(f"unknown model kind {tokens[0]!r}; "
                         f"expected one of {', '.join(sorted(_MODEL_KEYS))}")
    vals: dict[str, Fraction] = {}
    for tok in tokens[1:]:
        if "=" not in tok:
            raise ValueError(f"expected key=value, got {tok!r}")
        key, _, num = tok.partition("=")
        key = key.lower()
        if key not in _MODEL_KEYS[kind]:
            raise ValueError(f"model {kind!r} does not take parameter {key!r}")
        if key in vals:
            raise ValueError(f"duplicate parameter {key!r}")
        try:
            vals[key] = Fraction(num)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad number {num!r} for {key!r}: {exc}") from exc
    missing = [k for k in _MODEL_KEYS[kind] if k not in vals]
    if missing:
        raise ValueError(f"model {kind!r} is missing {', '.join(missing)}")
    try:
        if kind == "sc":
            return Sc()
        if kind == "fixed":
            return Fixed(vals["d"])
        if kind == "bdc":
            return Bdc(BdcParams(vals["mr"], vals["dr"], vals["mf"], vals["df"]))
        if kind == "bdcprime":
            return BdcPrime(vals["dr"], vals["df"])
        if kind == "wand":
            return WindowAnd(vals["m"], vals["d"])
        if kind == "wor":
            return WindowOr(vals["m"], vals["d"])
        if kind == "aic":
            return Aic(AicParams(vals["dr"], vals["df"]))
        if kind == "aicprime":
            return AicPrime(AicParams(vals["dr"], vals["df"]))
        if kind == "ric":
            return Ric(RicParams(vals["mur"], vals["deltar"], vals["muf"], vals["deltaf"]))
        if kind == "ricprime":
            return RicPrime(RicParams(vals["mur"], vals["deltar"], vals["muf"], vals["deltaf"]))
        if kind == "baidc":
            return Baidc(BdcParams(vals["mr"], vals["dr"], vals["mf"], vals["df"]),
                         AicParams(vals["deltar"], vals["deltaf"]))
        if kind == "bridc":
            return Bridc(BdcParams(vals["mr"], vals["dr"], vals["mf"], vals["df"]),
                         RicParams(vals["mur"], vals["deltar"], vals["muf"], vals["deltaf"]))
        if kind == "dbridc":
            return Dbridc(BdcParams(vals["mr"], vals["dr"], vals["mf"], vals["df"]))
        if kind == "sdbridc":
            return SdbridcPrime(vals["d"])
    except ValueError as exc:
        raise ValueError(f"invalid parameters for {kind!r}: {exc}") from exc
    raise AssertionError("unreachable")


def _fmt(t: Fraction) -> str:
    return str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"


def format_model(model: DelayModel) -> str:
    if isinstance(model, Sc):
        return "sc"
    if isinstance(model, Fixed):
        return f"fixed d={_fmt(model.d)}"
    if isinstance(model, Bdc):
        p = model.p
        return f"bdc mr={_fmt(p.m_r)} dr={_fmt(p.d_r)} mf={_fmt(p.m_f)} df={_fmt(p.d_f)}"
    if isinstance(model, BdcPrime):
        return f"bdcprime dr={_fmt(model.d_r)} df={_fmt(model.d_f)}"
    if isinstance(model, WindowAnd):
        return f"wand m={_fmt(model.m)} d={_fmt(model.d)}"
    if isinstance(model, WindowOr):
        return f"wor m={_fmt(model.m)} d={_fmt(model.d)}"
    if isinstance(model, Aic):
        return f"aic dr={_fmt(model.a.delta_r)} df={_fmt(model.a.delta_f)}"
    if isinstance(model, AicPrime):
        return f"aicprime dr={_fmt(model.a.delta_r)} df={_fmt(model.a.delta_f)}"
    if isinstance(model, Ric):
        r = model.r
        return (f"ric mur={_fmt(r.mu_r)} deltar={_fmt(r.delta_r)} "
                f"muf={_fmt(r.mu_f)} deltaf={_fmt(r.delta_f)}")
    if isinstance(model, RicPrime):
        r = model.r
        return (f"ricprime mur={_fmt(r.mu_r)} deltar={_fmt(r.delta_r)} "
                f"muf={_fmt(r.mu_f)} deltaf={_fmt(r.delta_f)}")
    if isinstance(model, Baidc):
        p, a = model.p, model.a
        return (f"baidc mr={_fmt(p.m_r)} dr={_fmt(p.d_r)} mf={_fmt(p.m_f)} "
                f"df={_fmt(p.d_f)} deltar={_fmt(a.delta_r)} deltaf={_fmt(a.delta_f)}")
    if isinstance(model, Bridc):
        p, r = model.p, model.r
        return (f"bridc mr={_fmt(p.m_r)} dr={_fmt(p.d_r)} mf={_fmt(p.m_f)} "
                f"df={_fmt(p.d_f)} mur={_fmt(r.mu_r)} deltar={_fmt(r.delta_r)} "
                f"muf={_fmt(r.mu_f)} deltaf={_fmt(r.delta_f)}")
    if isinstance(model, Dbridc):
        p = model.p
        return f"dbridc mr={_fmt(p.m_r)} dr={_fmt(p.d_r)} mf={_fmt(p.m_f)} df={_fmt(p.d_f)}"
    if isinstance(model, SdbridcPrime):
        return f"sdbridc d={_fmt(model.d)}"
    raise TypeError(f"unknown delay model {model!r}")
