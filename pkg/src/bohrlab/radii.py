"""Radius equations and their certified roots.

Each radius theorem is encoded as a Q-function of r whose unique sign
change in (0, 1) defines the radius.  ``q_value`` returns a certified
enclosure of Q(r); ``solve_radius`` bisects with sign certification at
every step, so the returned bracket is a checkable artifact: Q is
enclosed strictly below zero at the left end and strictly above zero at
the right end.

Q definitions (C_W and C_G are the alternating distance constants from
:mod:`.classes`; note n alpha + 1 - alpha times n equals
alpha n^2 + n(1 - alpha)):

* Q1 = (2 - 4 beta) r^2 + (2 + beta) r - beta
* Q2 = r + 2(1-beta) r^2/(1-r) + r^2 + 4(1-beta)^2 (2-r^2) r^4/(1-r^2)^2 - beta
* Q3 = 2r + 4 sum_{n>=2} r^n/(n(n alpha + 1 - alpha)) - 1 - 2 C_W
* Q4 = r + r^2 + 2 sum_{n>=2} r^n/(n(n alpha + 1 - alpha))
       + 4 sum_{n>=2} r^(2n)/(n(n alpha + 1 - alpha)^2) - 1 - 2 C_W
* Q5 = 2r + 2 sum_{j>=1} r^(kj+1)/(1 + kj alpha)
       + 2 sum_{n>=k+1} r^n/(1 + (n-1) alpha) - 1 - 2 C_G
* Q6 = r + r^2 + 2 sum_{n>=k+1} r^n/(1 + (n-1) alpha)
       + 4 sum_{n>=k+1} n r^(2n)/(1 + (n-1) alpha)^2 - 1 - 2 C_G
* QA = 2 (1 + r) r^N - (1 - r)^2
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import classes
from .classes import ClassParams, GkH, TildeG0H, W0H, check_alpha_unit, check_beta, check_k_alpha
from .errors import NoBracket, NonContracting, OutOfRange, SignAmbiguous
from .series import Enclosure, TermRule, eval_tail_bounded

# Right endpoint of the initial bracket.  The series lose their
# contraction bounds at r = 1; at 1 - DELTA every Q is already far
# positive while the geometric tails still close under the term cap.
DELTA = 1e-6

# Evaluation-budget ladder used during sign certification.  The top
# value keeps the near-divergent endpoint evaluations within the term
# cap; the bottom is the eps floor past which a sign is declared
# ambiguous.
_EPS_LADDER = (4.0, 4e-2, 4e-4, 4e-6, 4e-8, 4e-10, 4e-12, 1e-14)
EPS_MIN = 1e-15

# Alternating distance constants are cached at this fixed budget; it
# bounds how tightly a series-backed Q can be enclosed, and certifies
# signs down to |Q| of a few 1e-12, far below every bracket this module
# needs to resolve.
_CONST_EPS = 1e-12


@dataclass(frozen=True)
class T31:
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "beta", check_beta(self.beta))


@dataclass(frozen=True)
class T32:
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "beta", check_beta(self.beta))


@dataclass(frozen=True)
class T33:
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha_unit(self.alpha))


@dataclass(frozen=True)
class T34:
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha_unit(self.alpha))


@dataclass(frozen=True)
class T35:
    k: int
    alpha: float

    def __post_init__(self):
        k, alpha = check_k_alpha(self.k, self.alpha)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class T36:
    k: int
    alpha: float

    def __post_init__(self):
        k, alpha = check_k_alpha(self.k, self.alpha)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class TA:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise OutOfRange(f"n={self.n!r} must be an integer >= 1")
        object.__setattr__(self, "n", int(self.n))


RadiusProblem = Union[T31, T32, T33, T34, T35, T36, TA]


def problem_class(problem: RadiusProblem) -> Optional[ClassParams]:
    """The harmonic class a radius problem speaks about (None for TA)."""
    if isinstance(problem, (T31, T32)):
        return TildeG0H(problem.beta)
    if isinstance(problem, (T33, T34)):
        return W0H(problem.alpha)
    if isinstance(problem, (T35, T36)):
        return GkH(problem.k, problem.alpha)
    return None


@dataclass(frozen=True)
class RootResult:
    """A solved radius with its certified bracket.

    The root lies in [r - half_width, r + half_width]; q_lo / q_hi are the
    Q enclosures at the bracket ends, certified negative resp. positive.
    """

    r: float
    half_width: float
    q_lo: Enclosure
    q_hi: Enclosure
    iterations: int

    def __post_init__(self):
        if not (self.r - self.half_width > 0.0 and self.r + self.half_width < 1.0):
            raise ValueError("bracket escapes (0, 1)")
        if not (self.q_lo.hi < 0.0 < self.q_hi.lo):
            raise ValueError("bracket signs not certified")


# ---------------------------------------------------------------------------
# Series rules specific to the radius equations


def w0h_area_rule(alpha: float, r: float) -> TermRule:
    """Terms r^(2n) / (n (n alpha + 1 - alpha)^2) from n = 2."""

    def term(n: int) -> float:
        d = n * alpha + (1.0 - alpha)
        return r ** (2 * n) / (n * d * d)

    def block(ns):
        d = ns * alpha + (1.0 - alpha)
        return r ** (2.0 * ns) / (ns * d * d)

    return TermRule(term=term, start=2, ratio_bound=lambda n: r * r, term_block=block)


def gkh_tail_rule(k: int, alpha: float, r: float) -> TermRule:
    """Terms r^n / (1 + (n-1) alpha) from n = k + 1."""

    def term(n: int) -> float:
        return r ** n / (1.0 + (n - 1) * alpha)

    def block(ns):
        return r ** ns / (1.0 + (ns - 1.0) * alpha)

    return TermRule(term=term, start=k + 1, ratio_bound=lambda n: r, term_block=block)


def gkh_area_rule(k: int, alpha: float, r: float) -> TermRule:
    """Terms n r^(2n) / (1 + (n-1) alpha)^2 from n = k + 1.

    The consecutive-term ratio is r^2 (m+1)/m ((1+(m-1)alpha)/(1+m alpha))^2,
    which stays <= r^2 whenever (m^2+m-1) alpha^2 + 2 alpha - 1 >= 0; with
    alpha >= 1/k and m >= k+1 that always holds, so r^2 is a valid uniform
    ratio bound on the admissible range.
    """

    def term(n: int) -> float:
        d = 1.0 + (n - 1) * alpha
        return n * r ** (2 * n) / (d * d)

    def block(ns):
        d = 1.0 + (ns - 1.0) * alpha
        return ns * r ** (2.0 * ns) / (d * d)

    return TermRule(term=term, start=k + 1, ratio_bound=lambda n: r * r, term_block=block)


# ---------------------------------------------------------------------------
# Q evaluation


def _point_part(value: float, magnitude: float) -> Enclosure:
    # Covers the few-ulp rounding of the closed-form pieces; magnitude is
    # the sum of the absolute values of the assembled terms.
    return Enclosure.point(value, 4e-15 * magnitude + 5e-324)


def _assemble(point: Enclosure, series, constant, eps: float) -> Enclosure:
    enc = point
    if constant is not None:
        coef, c_enc = constant
        enc = enc + c_enc.scaled(coef)
    if series:
        budget = 0.5 * eps / len(series)
        for coef, rule in series:
            enc = enc + eval_tail_bounded(rule, budget / abs(coef)).scaled(coef)
    return enc


def q_value(problem: RadiusProblem, r: float, eps: float = 1e-12) -> Enclosure:
    """Certified enclosure of Q(r) for the given radius problem."""
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise OutOfRange(f"r={r!r} outside required range [0, 1)")
    if not (eps > 0.0):
        raise ValueError("eps must be positive")

    if isinstance(problem, T31):
        beta = problem.beta
        v = (2.0 - 4.0 * beta) * r * r + (2.0 + beta) * r - beta
        mag = abs(2.0 - 4.0 * beta) * r * r + (2.0 + beta) * r + beta
        return _point_part(v, mag)

    if isinstance(problem, T32):
        beta = problem.beta
        one_m_r = 1.0 - r
        one_m_r2 = one_m_r * (1.0 + r)  # avoids the 1 - r*r cancellation
        p_geo = 2.0 * (1.0 - beta) * r * r / one_m_r
        p_area = 4.0 * (1.0 - beta) ** 2 * (2.0 - r * r) * r ** 4 / (one_m_r2 * one_m_r2)
        v = r + p_geo + r * r + p_area - beta
        mag = r + p_geo + r * r + p_area + beta
        return _point_part(v, mag)

    if isinstance(problem, TA):
        rn = r ** problem.n
        v = 2.0 * (1.0 + r) * rn - (1.0 - r) ** 2
        mag = 2.0 * (1.0 + r) * rn + (1.0 - r) ** 2
        return _point_part(v, mag)

    if isinstance(problem, T33):
        alpha = problem.alpha
        point = _point_part(2.0 * r - 1.0, 2.0 * r + 1.0)
        const = (-2.0, classes.w0h_distance_constant(alpha, _CONST_EPS))
        series = [(4.0, classes.w0h_power_rule(alpha, r))]
        return _assemble(point, series, const, eps)

    if isinstance(problem, T34):
        alpha = problem.alpha
        point = _point_part(r + r * r - 1.0, r + r * r + 1.0)
        const = (-2.0, classes.w0h_distance_constant(alpha, _CONST_EPS))
        series = [
            (2.0, classes.w0h_power_rule(alpha, r)),
            (4.0, w0h_area_rule(alpha, r)),
        ]
        return _assemble(point, series, const, eps)

    if isinstance(problem, T35):
        k, alpha = problem.k, problem.alpha
        point = _point_part(2.0 * r - 1.0, 2.0 * r + 1.0)
        const = (-2.0, classes.gkh_distance_constant(k, alpha, _CONST_EPS))
        series = [
            (2.0, classes.gkh_power_rule(k, alpha, r)),
            (2.0, gkh_tail_rule(k, alpha, r)),
        ]
        return _assemble(point, series, const, eps)

    if isinstance(problem, T36):
        k, alpha = problem.k, problem.alpha
        point = _point_part(r + r * r - 1.0, r + r * r + 1.0)
        const = (-2.0, classes.gkh_distance_constant(k, alpha, _CONST_EPS))
        series = [
            (2.0, gkh_tail_rule(k, alpha, r)),
            (4.0, gkh_area_rule(k, alpha, r)),
        ]
        return _assemble(point, series, const, eps)

    raise TypeError(f"unknown radius problem {problem!r}")


# ---------------------------------------------------------------------------
# Closed form for Q1


def solve_q1_closed_form(beta: float, *, statement_constant: bool = False) -> float:
    """Unique root of Q1 in (0, 1), solved exactly.

    Q1 is quadratic with Q1(0) < 0 < Q1(1); the root continuous through
    the degenerate linear case beta = 1/2 is -2c / (b + sqrt(b^2 - 4ac)),
    which needs no division by the leading coefficient.

    ``statement_constant`` swaps the constant term -beta for -1, a
    variant reading of the equation that circulates alongside it.  The
    attainment computation at the extremal pins the constant to -beta,
    so that is the default; the flag exists for comparing the two.
    """
    beta = check_beta(beta)
    a = 2.0 - 4.0 * beta
    b = 2.0 + beta
    c = -1.0 if statement_constant else -beta
    disc = b * b - 4.0 * a * c
    return -2.0 * c / (b + math.sqrt(disc))


# ---------------------------------------------------------------------------
# Certified bisection


def _certified_sign(q: Callable[[float, float], Enclosure], r: float,
                    eps_min: float) -> tuple[int, Enclosure]:
    """Shrink the evaluation budget until the enclosure excludes zero.

    Returns (-1 | 0 | +1, enclosure); 0 means still straddling at the
    floor.  If even the coarsest budget cannot converge under the term
    cap (deep endpoint evaluations of heavy series), the budget is
    escalated instead: a wider enclosure may still certify a sign that
    large.
    """
    last = None
    for eps in _EPS_LADDER + (eps_min,):
        if eps < eps_min:
            eps = eps_min
        try:
            enc = q(r, eps)
        except NonContracting:
            if last is None and eps == _EPS_LADDER[0]:
                return _certified_sign_escalating(q, r)
            break
        last = enc
        if enc.hi < 0.0:
            return -1, enc
        if enc.lo > 0.0:
            return 1, enc
        if eps <= eps_min:
            break
    if last is None:
        raise NonContracting(f"Q could not be enclosed at r={r!r}")
    return 0, last


def _certified_sign_escalating(q, r):
    eps = _EPS_LADDER[0]
    while eps <= 1e9:
        eps *= 32.0
        try:
            enc = q(r, eps)
        except NonContracting:
            continue
        if enc.hi < 0.0:
            return -1, enc
        if enc.lo > 0.0:
            return 1, enc
        return 0, enc
    raise NonContracting(f"Q could not be enclosed at r={r!r} at any budget")


def bisect_certified(q: Callable[[float, float], Enclosure], tol: float, *,
                     delta: float = DELTA, eps_min: float = EPS_MIN) -> RootResult:
    """Bisection on [0, 1 - delta] with certified endpoint signs.

    ``q(r, eps)`` must return an enclosure of a function that is negative
    at 0 and positive at 1 - delta.  Raises NoBracket if either endpoint
    certifies with the wrong sign, SignAmbiguous (carrying the best
    bracket) if the midpoint sign cannot be certified before the bracket
    reaches ``tol``.
    """
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    lo, hi = 0.0, 1.0 - delta
    s, q_lo = _certified_sign(q, lo, eps_min)
    if s >= 0:
        raise NoBracket(f"Q({lo!r}) is not certified negative (enclosure [{q_lo.lo:.6g}, {q_lo.hi:.6g}])")
    s, q_hi = _certified_sign(q, hi, eps_min)
    if s <= 0:
        raise NoBracket(f"Q({hi!r}) is not certified positive (enclosure [{q_hi.lo:.6g}, {q_hi.hi:.6g}])")
    iterations = 0
    while 0.5 * (hi - lo) > tol or lo == 0.0:
        if iterations > 200:
            raise RuntimeError("bisection failed to terminate")
        mid = 0.5 * (lo + hi)
        s, enc = _certified_sign(q, mid, eps_min)
        iterations += 1
        if s < 0:
            lo, q_lo = mid, enc
        elif s > 0:
            hi, q_hi = mid, enc
        else:
            partial = None
            if lo > 0.0:
                partial = RootResult(
                    r=0.5 * (lo + hi), half_width=0.5 * (hi - lo),
                    q_lo=q_lo, q_hi=q_hi, iterations=iterations,
                )
            raise SignAmbiguous(
                f"sign of Q({mid!r}) still ambiguous at eps={eps_min:g} "
                f"(enclosure [{enc.lo:.6g}, {enc.hi:.6g}]); "
                f"best bracket half-width {0.5 * (hi - lo):.3g} > tol {tol:g}",
                result=partial,
            )
    return RootResult(
        r=0.5 * (lo + hi), half_width=0.5 * (hi - lo),
        q_lo=q_lo, q_hi=q_hi, iterations=iterations,
    )


def solve_radius(problem: RadiusProblem, tol: float = 1e-10) -> RootResult:
    """Solve the radius problem to a certified bracket of half-width <= tol."""

    def q(r: float, eps: float) -> Enclosure:
        return q_value(problem, r, eps)

    return bisect_certified(q, tol)
