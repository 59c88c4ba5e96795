"""Solution construction and the independent brute-force oracle.

Deterministic conditions get direct solvers (a translation, a window
evaluation, or an event sweep).  Nondeterministic conditions are
represented three ways: exact extremal members, a constructive sampler
built on the representation  x = lower or (free . upper),  and
exhaustive enumeration of all grid-toggle candidates filtered through
the membership checkers.  The enumeration doubles as the oracle for
set-level claims (uniqueness, composition): it generates candidates
independently and keeps only those the checker accepts.

``probe_points`` / ``brute_*`` evaluate signals and sliding windows
directly from toggle lists, with no interval machinery; the test suite
uses them to cross-check every exact operation at a dense set of
instants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .stepfn import (
    IntervalSet,
    RationalLike,
    StepFunction,
    as_signal,
    as_time,
    window,
    window_inf,
    window_sup,
    window_inf_halfopen,
    window_sup_halfopen,
)
from .conditions import (
    Baidc,
    Bdc,
    BdcParams,
    BdcPrime,
    Bridc,
    Dbridc,
    DelayModel,
    Fixed,
    InconsistentModelError,
    Ric,
    RicParams,
    Sc,
    SdbridcPrime,
    WindowAnd,
    WindowOr,
    bdc_lower,
    bdc_upper,
    cc_bdc,
    cc_bridc,
    check_membership,
    ric_fall_permit,
    ric_rise_permit,
)


class BudgetExceededError(RuntimeError):
    """Enumeration or retry budget ran out before an answer was reached."""


class SampleRetryError(RuntimeError):
    """No verified member was found within the retry budget."""


# ---------------------------------------------------------------------------
# Deterministic solvers
# ---------------------------------------------------------------------------

def solve_fixed(u: StepFunction, d: RationalLike) -> StepFunction:
    """The pure delay: x(t) = u(t-d), d >= 0."""
    d = as_time(d)
    if d < 0:
        raise ValueError("fixed delay needs d >= 0")
    return as_signal(u).shift(d)


def bdc_bounds(u: StepFunction, p: BdcParams) -> tuple[StepFunction, StepFunction]:
    """Extremal members (windowed AND, windowed OR) of the bounded delay."""
    if not cc_bdc(p):
        raise InconsistentModelError(f"CC_BDC fails for {p}")
    as_signal(u)
    return bdc_lower(u, p), bdc_upper(u, p)


def sample_bdc(u: StepFunction, p: BdcParams, free: StepFunction) -> StepFunction:
    """A member of the bounded delay's solution set: lower or (free . upper).

    Every choice of the free signal yields a member; free = 0 gives the
    lower bound and free = 1 the upper bound.
    """
    lower, upper = bdc_bounds(u, p)
    as_signal(free)
    return lower | (free & upper)


def solve_dbridc(u: StepFunction, p: BdcParams) -> StepFunction:
    """Unique solution of the deterministic bounded relative inertial delay.

    Event sweep over the merged switches of  a = inf-window of u  and
    b0 = inf-window of not-u:  x is 1 where a is 1, 0 where b0 is 1 and
    holds its previous value elsewhere; before time 0 it equals u.
    """
    if not cc_bdc(p):
        raise InconsistentModelError(f"CC_BDC fails for {p}")
    as_signal(u)
    a = window_inf(u, p.d_r, p.m_r)
    b0 = window_inf(~u, p.d_f, p.m_f)
    v = u.leading
    toggles = []
    for t in sorted(set(a.bps) | set(b0.bps)):
        nv = 1 if a.value(t) else (0 if b0.value(t) else v)
        if nv != v:
            toggles.append(t)
            v = nv
    return StepFunction.from_toggles(u.leading, toggles)


def solve_sdbridc(u: StepFunction, d: RationalLike) -> StepFunction:
    """Unique solution with x(0-0) = u(0-0) of the symmetric deterministic
    variant: x toggles toward u(t-0) exactly when the open lookback window
    (t-d, t) contains no input switch."""
    d = as_time(d)
    if d <= 0:
        raise ValueError("SDBRIDC' needs d > 0")
    as_signal(u)
    quiet = ~window(u.derivative(), "sup", -d, 0,
                    include_start=False, include_end=False)
    events = sorted(set(u.bps) | set(quiet.bps))
    v = u.leading
    toggles = []
    for t in events:
        if (v ^ u.left_value(t)) and quiet.value(t):
            v ^= 1
            toggles.append(t)
        # a pending difference across a whole quiet interval would mean
        # dense switching; the sweep always clears it at the left end
        assert not ((v ^ u.right_value(t)) and quiet.right_value(t))
    return StepFunction.from_toggles(u.leading, toggles)


# ---------------------------------------------------------------------------
# Switch-window propagation for alternating inputs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SwitchWindow:
    kind: str  # "rise" | "fall"
    lo: Fraction
    hi: Fraction


def forced_switch_windows(u: StepFunction, p: BdcParams) -> list[SwitchWindow]:
    """Closed windows in which any solution of the bounded delay must place
    its switches, assuming the forced-1 and forced-0 regions alternate.

    Forced regions are supp(inf-window) and the zero set of the
    sup-window; between consecutive opposite regions exactly one switch
    must fall, anywhere in [end of one, start of the next].
    """
    lower, upper = bdc_bounds(u, p)
    regions = []
    for iv in lower.support():
        regions.append((iv, 1))
    for iv in upper.zero_set():
        regions.append((iv, 0))
    regions.sort(key=lambda r: (1, r[0].lo) if r[0].lo is not None else (0, Fraction(0)))
    v = u.leading
    windows: list[SwitchWindow] = []
    prev_end: Optional[Fraction] = None
    for iv, bit in regions:
        if bit == v:
            # same-value region: no switch needed, it only pins the floor
            prev_end = iv.hi
            if iv.hi is None:
                break
            continue
        if iv.lo is None:
            raise ValueError("forced regions do not alternate from the initial value")
        lo = prev_end if prev_end is not None else Fraction(0)
        windows.append(SwitchWindow("rise" if bit == 1 else "fall", lo, iv.lo))
        v = bit
        prev_end = iv.hi
        if iv.hi is None:
            break
    return windows


def _earliest_in(sets: IntervalSet, bound: Fraction, bound_strict: bool
                 ) -> Optional[tuple[Fraction, bool]]:
    """Infimum of {t in sets : t >= bound (or > if strict)} as
    (value, attained); None when that set is empty."""
    for iv in sets.intervals:
        if iv.lo is None or bound > iv.lo:
            t, attained = bound, not bound_strict
        elif bound == iv.lo:
            t, attained = bound, not bound_strict and iv.lo_closed
        else:
            t, attained = iv.lo, iv.lo_closed
        if iv.hi is not None:
            if t > iv.hi:
                continue
            if t == iv.hi and not (attained and iv.hi_closed):
                continue
        return t, attained
    return None


def _verify_sandwich_with_inertia(u: StepFunction, x: StepFunction,
                                  model: DelayModel) -> bool:
    """Clause-level membership without the consistency gate, so that
    solvability of a single input can be judged even for parameter sets
    whose consistency condition fails."""
    p = model.p
    lower, upper = bdc_lower(u, p), bdc_upper(u, p)
    ok = (lower <= x) and (x <= upper)
    if isinstance(model, Baidc):
        a = model.a
        ok = ok and x.rises() <= window(x, "inf", 0, a.delta_r)
        ok = ok and x.falls() <= window(~x, "inf", 0, a.delta_f)
    if isinstance(model, Bridc):
        ok = ok and x.rises() <= ric_rise_permit(u, model.r)
        ok = ok and x.falls() <= ric_fall_permit(u, model.r)
    return ok


def alternating_witness(u: StepFunction, model: DelayModel
                        ) -> Optional[StepFunction]:
    """Decide solvability for an alternating-region input by exact forward
    propagation of switch-window infima; returns a verified member, or
    None when the window chain is infeasible.

    Handles Bdc, Baidc and Bridc, with or without a satisfied
    consistency condition (consistency quantifies over all inputs; this
    decides one input).  Infeasibility is exact: any solution must place
    its k-th forced switch inside the k-th window (and permit set),
    above the propagated bound -- the hold constraints apply to all
    later opposite switches, so intermediate extra switches cannot relax
    the chain.
    """
    if isinstance(model, Bdc):
        p, gaps, permits = model.p, None, None
    elif isinstance(model, Baidc):
        p = model.p
        gaps = {"rise": model.a.delta_r, "fall": model.a.delta_f}
        permits = None
    elif isinstance(model, Bridc):
        p = model.p
        gaps = None
        permits = {"rise": ric_rise_permit(u, model.r).support(),
                   "fall": ric_fall_permit(u, model.r).support()}
    else:
        raise TypeError(f"alternating_witness does not handle {model!r}")

    windows = forced_switch_windows(u, p)
    if not windows:
        x = StepFunction.const(u.leading)
        return x if _verify_sandwich_with_inertia(u, x, model) else None

    def propagate(realize_margin: Optional[Fraction]) -> Optional[list[Fraction]]:
        """Infima chain; with a margin, also pick concrete times."""
        times: list[Fraction] = []
        bound, strict = Fraction(0), False
        for w in windows:
            if bound < w.lo:
                bound, strict = w.lo, False
            if permits is not None:
                hit = _earliest_in(permits[w.kind], bound, strict)
                if hit is None:
                    return None
                t, attained = hit
            else:
                t, attained = bound, not strict
            if t > w.hi or (t == w.hi and not attained):
                return None
            if realize_margin is not None and not attained:
                t = t + realize_margin
                if t > w.hi:
                    return None
                if permits is not None and not permits[w.kind].contains(t):
                    return None
            times.append(t)
            gap = gaps["rise" if w.kind == "rise" else "fall"] if gaps \
                else Fraction(0)
            bound, strict = t + gap, True
        return times

    if propagate(None) is None:
        return None
    # feasible: realize with a concrete margin at unattained infima
    span = max(w.hi for w in windows) + 1
    margin = span  # shrink geometrically until a verified pick exists
    for _ in range(64):
        margin = margin / 2
        times = propagate(margin)
        if times is None:
            continue
        x = StepFunction.from_toggles(u.leading, times)
        if _verify_sandwich_with_inertia(u, x, model):
            return x
    return None


def sample_bridc(u: StepFunction, p: BdcParams, r: RicParams,
                 free: StepFunction, retries: int = 8) -> StepFunction:
    """A verified member of the bounded relative inertial delay.

    Tries the deterministic sweep, then bounded-delay samples driven by
    the free signal, then switch-window propagation; every candidate is
    filtered through the checker, and exhaustion raises instead of
    returning an unverified trace.
    """
    ok, _ = cc_bridc(p, r)
    if not ok:
        raise InconsistentModelError(f"CC_BRIDC fails for {p}, {r}")
    model = Bridc(p, r)
    as_signal(free)

    def verified(x: Optional[StepFunction]) -> Optional[StepFunction]:
        if x is None:
            return None
        return x if check_membership(u, x, model).ok else None

    candidates: list[Callable[[], Optional[StepFunction]]] = [
        lambda: solve_dbridc(u, p),
        lambda: sample_bdc(u, p, free),
        lambda: sample_bdc(u, p, StepFunction.const(0)),
        lambda: sample_bdc(u, p, StepFunction.const(1)),
        lambda: sample_bdc(u, p, free & ric_rise_permit(u, r)),
        lambda: alternating_witness(u, model),
    ]
    tried = 0
    for make in candidates:
        if tried >= retries:
            break
        tried += 1
        try:
            x = verified(make())
        except (ValueError, TypeError):
            continue
        if x is not None:
            return x
    raise SampleRetryError(
        f"no verified member found in {tried} attempts for {model}")


# ---------------------------------------------------------------------------
# Grid enumeration oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    step: Fraction
    horizon: Fraction
    max_toggles: int
    max_candidates: int = 200_000

    def __post_init__(self):
        object.__setattr__(self, "step", as_time(self.step))
        object.__setattr__(self, "horizon", as_time(self.horizon))
        if self.step <= 0 or self.horizon <= 0:
            raise ValueError("step and horizon must be positive")
        if (self.horizon / self.step).denominator != 1:
            raise ValueError("step must divide horizon")
        if self.max_toggles < 0:
            raise ValueError("max_toggles must be >= 0")

    def points(self) -> list[Fraction]:
        n = int(self.horizon / self.step)
        return [i * self.step for i in range(n + 1)]


def _extremum_on(f: StepFunction, lo: Fraction, hi: Optional[Fraction],
                 want_max: bool) -> int:
    """Max (or min) of f over [lo, hi); hi None means +oo."""
    probes = [lo]
    inner = [b for b in f.bps if b > lo and (hi is None or b < hi)]
    probes += inner
    walls = [lo] + inner + ([hi] if hi is not None else [inner[-1] + 1 if inner else lo + 1])
    for a, b in zip(walls, walls[1:]):
        probes.append((a + b) / 2)
    if hi is None:
        probes.append(walls[-1] + 1)
    vals = [f.value(t) for t in probes]
    return max(vals) if want_max else min(vals)


def _forced_cells(points: Sequence[Fraction],
                  lower: Optional[StepFunction],
                  upper: Optional[StepFunction]) -> Optional[list[Optional[int]]]:
    """Per-cell forced values from a sandwich; None when no solution fits."""
    cells: list[Optional[int]] = []
    for i, g in enumerate(points):
        hi = points[i + 1] if i + 1 < len(points) else None
        forced: Optional[int] = None
        if lower is not None and _extremum_on(lower, g, hi, want_max=True) == 1:
            forced = 1
        if upper is not None and _extremum_on(upper, g, hi, want_max=False) == 0:
            if forced == 1:
                return None
            forced = 0
        cells.append(forced)
    return cells


def _oracle_constraints(u: Optional[StepFunction], model: DelayModel,
                        points: Sequence[Fraction]):
    """(x0_forced, cells, rise_permit, fall_permit); cells None = infeasible."""
    lower = upper = None
    rise = fall = None
    x0: Optional[int] = None
    if isinstance(model, Fixed):
        lower = upper = u.shift(model.d)
    elif isinstance(model, WindowAnd):
        lower = upper = window_inf(u, model.d, model.m)
    elif isinstance(model, WindowOr):
        lower = upper = window_sup(u, model.d, model.m)
    elif isinstance(model, (Bdc, Baidc, Bridc, Dbridc)):
        p = model.p
        lower, upper = bdc_lower(u, p), bdc_upper(u, p)
        if isinstance(model, Dbridc):
            rise = lower
            fall = window_inf(~u, p.d_f, p.m_f)
        if isinstance(model, Bridc):
            rise = ric_rise_permit(u, model.r)
            fall = ric_fall_permit(u, model.r)
    elif isinstance(model, BdcPrime):
        lower = window_inf_halfopen(u, model.d_r)
        upper = window_sup_halfopen(u, model.d_f)
    elif isinstance(model, Ric):
        rise = ric_rise_permit(u, model.r)
        fall = ric_fall_permit(u, model.r)
    elif isinstance(model, SdbridcPrime):
        x0 = u.leading
    if lower is not None:
        lo0 = lower.leading
        up0 = upper.leading
        if lo0 == 1:
            x0 = 1
        if up0 == 0:
            if x0 == 1:
                return None, None, None, None
            x0 = 0
    cells = _forced_cells(points, lower, upper)
    return x0, cells, rise, fall


class _Enough(Exception):
    pass


def enumerate_grid_solutions(u: Optional[StepFunction], model: DelayModel,
                             grid: GridSpec,
                             stop_after: Optional[int] = None) -> list[StepFunction]:
    """All signals with toggles on the grid in [0, horizon] (final value
    extended to +oo) that the membership checker accepts.

    Candidate generation prunes only by conditions that are necessary
    for membership (forced sandwich cells, switch-permit instants), so
    the filtered family is exactly the accepted subset of the full grid
    family.  ``stop_after`` truncates the search once that many members
    are found (existence queries).  Raises BudgetExceededError when the
    candidate budget runs out.
    """
    if u is not None:
        as_signal(u)
        if any(b not in set(grid.points()) and b <= grid.horizon for b in u.bps):
            raise ValueError("input breakpoints must lie on the grid")
    points = grid.points()
    x0_forced, cells, rise, fall = _oracle_constraints(u, model, points)
    if isinstance(model, Sc):
        cells = [None] * len(points)
        cells[-1] = u.limit_at_infinity()
    if cells is None:
        return []

    solutions = []
    budget = grid.max_candidates

    def check(x0: int, toggles: tuple[Fraction, ...]) -> None:
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise BudgetExceededError("grid enumeration budget exceeded")
        x = StepFunction.from_toggles(x0, toggles)
        if check_membership(u, x, model).ok:
            solutions.append(x)
            if stop_after is not None and len(solutions) >= stop_after:
                raise _Enough

    def extend(i: int, v: int, x0: int, toggles: list[Fraction]) -> None:
        if i == len(points):
            check(x0, tuple(toggles))
            return
        g = points[i]
        forced = cells[i]
        for nv in (v, 1 - v):
            if forced is not None and nv != forced:
                continue
            if nv != v:
                if len(toggles) >= grid.max_toggles:
                    continue
                permit = rise if nv == 1 else fall
                if permit is not None and permit.value(g) == 0:
                    continue
                toggles.append(g)
                extend(i + 1, nv, x0, toggles)
                toggles.pop()
            else:
                extend(i + 1, nv, x0, toggles)

    starts = (x0_forced,) if x0_forced is not None else (0, 1)
    try:
        for x0 in starts:
            extend(0, x0, x0, [])
    except _Enough:
        pass
    solutions.sort(key=lambda x: (x.leading, x.bps))
    return solutions


# ---------------------------------------------------------------------------
# Brute-force probe evaluation (the grid oracle's primitive layer)
# ---------------------------------------------------------------------------

def brute_value(initial: int, toggles: Sequence[Fraction], t: Fraction) -> int:
    """Right-continuous evaluation straight from a toggle list."""
    flips = sum(1 for s in toggles if s <= t)
    return initial ^ (flips & 1)


def brute_left_value(initial: int, toggles: Sequence[Fraction], t: Fraction) -> int:
    flips = sum(1 for s in toggles if s < t)
    return initial ^ (flips & 1)


def brute_window(initial: int, toggles: Sequence[Fraction], op: str,
                 lo: Fraction, hi: Fraction,
                 include_lo: bool, include_hi: bool) -> int:
    """inf/sup of a right-continuous toggle signal over <lo, hi> by scanning
    every constant piece the window intersects.

    Right continuity makes the closure at lo irrelevant (the value at lo
    is also the value just right of it); the closure at hi is not.
    """
    if lo > hi or (lo == hi and not (include_lo and include_hi)):
        return 1 if op == "inf" else 0
    inner = [s for s in toggles if lo < s < hi]
    walls = [lo] + inner + [hi]
    vals = [brute_value(initial, toggles, lo)]
    vals += [brute_value(initial, toggles, s) for s in inner]
    vals += [brute_value(initial, toggles, (a + b) / 2)
             for a, b in zip(walls, walls[1:])]
    if lo != hi:
        vals.append(brute_value(initial, toggles, hi) if include_hi
                    else brute_left_value(initial, toggles, hi))
    return min(vals) if op == "inf" else max(vals)


def probe_points(fns: Sequence[StepFunction],
                 offsets: Sequence[RationalLike] = (0,)) -> list[Fraction]:
    """A probe set dense enough to distinguish any two step functions whose
    breakpoints come from the given ones shifted by the given offsets:
    every shifted breakpoint, every midpoint between consecutive ones,
    and a point on each unbounded side."""
    base = sorted({b + as_time(o) for f in fns for b in f.bps for o in offsets}
                  | {Fraction(0)})
    pts = list(base)
    pts += [(a + b) / 2 for a, b in zip(base, base[1:])]
    pts += [base[0] - 1, base[-1] + 1]
    return sorted(set(pts))
