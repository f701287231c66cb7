"""The three harmonic-mapping classes as data.

Each class is a small tagged parameter record plus four derived objects:
per-index coefficient bounds, the extremal function saturating them, the
growth envelope of |f| on circles, and the class-wide lower bound on the
distance from f(0) to the image boundary.

Classes covered (f = h + conj(g), h(0) = 0, h'(0) = 1, g'(0) = 0):

* ``TildeG0H(beta)``: Re(h(z)/z - beta) > |g(z)/z|, 0 < beta < 1.
* ``W0H(alpha)``: Re(h' + alpha z h'') > |g' + alpha z g''|,
  0 <= alpha < 1.
* ``GkH(k, alpha)``: Re((1-alpha) h/z + alpha h') >
  |(1-alpha) g/z + alpha g'| with the k-fold normalization
  a_2 = ... = a_k = b_2 = ... = b_k = 0; admissible here for
  alpha >= 1/k, which is what the radius results require.

Parameter ranges are those the radius theorems need, enforced at
construction, even where a coefficient bound alone would tolerate more.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import OutOfRange
from .series import Enclosure, TermRule, eval_alternating, eval_alternating_convex, eval_tail_bounded


def check_beta(beta: float) -> float:
    beta = float(beta)
    if not (0.0 < beta < 1.0):
        raise OutOfRange(f"beta={beta!r} outside required range (0, 1)")
    return beta


def check_alpha_unit(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha < 1.0):
        raise OutOfRange(f"alpha={alpha!r} outside required range [0, 1)")
    return alpha


def check_k_alpha(k: int, alpha: float) -> tuple[int, float]:
    if int(k) != k or int(k) < 1:
        raise OutOfRange(f"k={k!r} must be an integer >= 1")
    k = int(k)
    alpha = float(alpha)
    if not (alpha >= 1.0 / k) or not math.isfinite(alpha):
        raise OutOfRange(f"alpha={alpha!r} violates required range alpha >= 1/k = {1.0 / k:g}")
    return k, alpha


def _check_radius(r: float) -> float:
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise OutOfRange(f"r={r!r} outside required range [0, 1)")
    return r


@dataclass(frozen=True)
class TildeG0H:
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "beta", check_beta(self.beta))


@dataclass(frozen=True)
class W0H:
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha_unit(self.alpha))


@dataclass(frozen=True)
class GkH:
    k: int
    alpha: float

    def __post_init__(self):
        k, alpha = check_k_alpha(self.k, self.alpha)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "alpha", alpha)


ClassParams = Union[TildeG0H, W0H, GkH]


@dataclass(frozen=True)
class HarmonicModel:
    """Truncated coefficient model of f = h + conj(g).

    ``a`` and ``b`` hold the analytic and co-analytic coefficients
    indexed by power (entry 0 unused and zero); the normalization forces
    a[1] = 1 and b[0] = b[1] = 0.  Arrays are complex and share a length
    of truncation + 1.
    """

    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.complex128)
        b = np.asarray(self.b, dtype=np.complex128)
        if b.shape[0] < a.shape[0]:
            b = np.concatenate((b, np.zeros(a.shape[0] - b.shape[0], dtype=np.complex128)))
        if a.ndim != 1 or b.shape != a.shape or a.shape[0] < 3:
            raise ValueError("coefficient arrays must be 1-D, equal length, truncation >= 2")
        if a[0] != 0.0 or a[1] != 1.0:
            raise ValueError("normalization requires a[0] = 0 and a[1] = 1")
        if b[0] != 0.0 or b[1] != 0.0:
            raise ValueError("normalization requires b[0] = b[1] = 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def truncation(self) -> int:
        return self.a.shape[0] - 1

    def analytic_at(self, z):
        """h(z) for scalar or array z."""
        return np.polynomial.polynomial.polyval(z, self.a)

    def co_analytic_at(self, z):
        """g(z) for scalar or array z."""
        return np.polynomial.polynomial.polyval(z, self.b)

    def value_at(self, z):
        """f(z) = h(z) + conj(g(z))."""
        return self.analytic_at(z) + np.conj(self.co_analytic_at(z))

    def coeff_mag_sums(self) -> np.ndarray:
        """|a_n| + |b_n| for n = 0 .. truncation."""
        return np.abs(self.a) + np.abs(self.b)


def identity_model(truncation: int = 2) -> HarmonicModel:
    a = np.zeros(truncation + 1, dtype=np.complex128)
    a[1] = 1.0
    return HarmonicModel(a, np.zeros_like(a))


# ---------------------------------------------------------------------------
# Coefficient bounds and extremal functions


def coeff_bound_sum(params: ClassParams, n: int) -> float:
    """Sharp upper bound on |a_n| + |b_n| (also valid for ||a_n| - |b_n||).

    For GkH the indices 2 .. k are pinned to zero by the normalization and
    return 0; everything below n = 2 is out of range.
    """
    if int(n) != n or n < 2:
        raise OutOfRange(f"coefficient index n={n!r} must be an integer >= 2")
    n = int(n)
    if isinstance(params, TildeG0H):
        return 2.0 * (1.0 - params.beta)
    if isinstance(params, W0H):
        return 2.0 / (n * (n * params.alpha + (1.0 - params.alpha)))
    if isinstance(params, GkH):
        if n <= params.k:
            return 0.0
        return 2.0 / (1.0 + (n - 1) * params.alpha)
    raise TypeError(f"unknown class parameters {params!r}")


def _bound_array(params: ClassParams, ns: np.ndarray) -> np.ndarray:
    """Vectorized coeff_bound_sum over an integer index array (all >= 2)."""
    ns = np.asarray(ns, dtype=np.float64)
    if isinstance(params, TildeG0H):
        return np.full_like(ns, 2.0 * (1.0 - params.beta))
    if isinstance(params, W0H):
        return 2.0 / (ns * (ns * params.alpha + (1.0 - params.alpha)))
    out = np.where(ns <= params.k, 0.0, 2.0 / (1.0 + (ns - 1) * params.alpha))
    return out


def extremal_indices(params: ClassParams, truncation: int) -> np.ndarray:
    """Indices where the class extremal function has nonzero coefficients."""
    if isinstance(params, GkH):
        return np.arange(params.k + 1, truncation + 1, params.k)
    return np.arange(2, truncation + 1)


def extremal_model(params: ClassParams, truncation: int) -> HarmonicModel:
    """The class member saturating every coefficient bound, truncated.

    TildeG0H: a_n = 2(1-beta) for all n >= 2.  W0H: a_n = 2/(n(n alpha
    + 1 - alpha)).  GkH: nonzero only on the lacunary index set
    {kj + 1}, where a = 2/(1 + (n-1) alpha).  Co-analytic part zero.
    """
    floor = params.k + 1 if isinstance(params, GkH) else 2
    if int(truncation) != truncation or truncation < floor:
        raise OutOfRange(f"truncation={truncation!r} must be an integer >= {floor}")
    truncation = int(truncation)
    a = np.zeros(truncation + 1, dtype=np.complex128)
    a[1] = 1.0
    idx = extremal_indices(params, truncation)
    a[idx] = _bound_array(params, idx)
    return HarmonicModel(a, np.zeros_like(a))


# ---------------------------------------------------------------------------
# Series rules shared with the radius equations

def w0h_power_rule(alpha: float, r: float, *, alternating: bool = False) -> TermRule:
    """Terms r^n / (n (n alpha + 1 - alpha)) from n = 2, optionally with
    the (-1)^(n-1) sign pattern of the lower growth envelope."""

    def magnitude(ns):
        return r ** ns / (ns * (ns * alpha + (1.0 - alpha)))

    if alternating:
        def term(n: int) -> float:
            return (-1.0) ** (n - 1) * r ** n / (n * (n * alpha + (1.0 - alpha)))

        def block(ns):
            return np.where(ns % 2 == 0, -1.0, 1.0) * magnitude(ns)
    else:
        def term(n: int) -> float:
            return r ** n / (n * (n * alpha + (1.0 - alpha)))

        block = magnitude

    # Denominator increases with n, so consecutive magnitude ratios never
    # exceed r.
    return TermRule(term=term, start=2, ratio_bound=lambda n: r, term_block=block)


def gkh_power_rule(k: int, alpha: float, r: float, *, alternating: bool = False) -> TermRule:
    """Terms r^(kj+1) / (1 + k j alpha) over j = 1, 2, ..., optionally with
    the (-1)^j signs of the lower growth envelope."""

    def magnitude(js):
        return r ** (k * js + 1) / (1.0 + k * js * alpha)

    if alternating:
        def term(j: int) -> float:
            return (-1.0) ** j * r ** (k * j + 1) / (1.0 + k * j * alpha)

        def block(js):
            return np.where(js % 2 == 0, 1.0, -1.0) * magnitude(js)
    else:
        def term(j: int) -> float:
            return r ** (k * j + 1) / (1.0 + k * j * alpha)

        block = magnitude

    return TermRule(term=term, start=1, ratio_bound=lambda j: r ** k, term_block=block)


def w0h_constant_rule(alpha: float) -> TermRule:
    """Terms (-1)^(n-1) / (n (n alpha + 1 - alpha)) from n = 2: the
    alternating constant in the W0H distance bound."""

    def term(n: int) -> float:
        return (-1.0) ** (n - 1) / (n * (n * alpha + (1.0 - alpha)))

    def block(ns):
        return np.where(ns % 2 == 0, -1.0, 1.0) / (ns * (ns * alpha + (1.0 - alpha)))

    # consecutive ratios increase toward 1, so 1.0 is the only bound valid
    # for every later index; there is no geometric tail here
    return TermRule(term=term, start=2, ratio_bound=lambda n: 1.0, term_block=block)


def gkh_constant_rule(k: int, alpha: float) -> TermRule:
    """Terms (-1)^j / (1 + k j alpha) from j = 1: the alternating constant
    in the GkH distance bound."""

    def term(j: int) -> float:
        return (-1.0) ** j / (1.0 + k * j * alpha)

    def block(js):
        return np.where(js % 2 == 0, 1.0, -1.0) / (1.0 + k * js * alpha)

    # ratios increase toward 1 (no geometric tail); see w0h_constant_rule
    return TermRule(term=term, start=1, ratio_bound=lambda j: 1.0, term_block=block)


@lru_cache(maxsize=None)
def w0h_distance_constant(alpha: float, eps: float = 1e-12) -> Enclosure:
    """Enclosure of sum_{n>=2} (-1)^(n-1) / (n (n alpha + 1 - alpha)).

    The magnitudes 1/(n (n alpha + 1 - alpha)) are completely monotone in
    n (reciprocal of a product of increasing affine factors), so the
    convex midpoint bound applies; the evaluator re-checks the decay it
    relies on.
    """
    return eval_alternating_convex(w0h_constant_rule(alpha), eps)


@lru_cache(maxsize=None)
def gkh_distance_constant(k: int, alpha: float, eps: float = 1e-12) -> Enclosure:
    """Enclosure of sum_{j>=1} (-1)^j / (1 + k j alpha); convex decay as
    above."""
    return eval_alternating_convex(gkh_constant_rule(k, alpha), eps)


# ---------------------------------------------------------------------------
# Growth envelopes and the boundary-distance lower bound


def growth_envelope(params: ClassParams, r: float, eps: float = 1e-12) -> tuple[Enclosure, Enclosure]:
    """Enclosures of the class's lower/upper bounds on |f(z)| at |z| = r.

    TildeG0H has closed forms (width is rounding slack only); the other
    two classes evaluate their envelope series with certified tails.
    """
    r = _check_radius(r)
    if r == 0.0:
        zero = Enclosure(0.0, 0.0)
        return zero, zero
    if isinstance(params, TildeG0H):
        beta = params.beta
        low = beta * r + (1.0 - beta) * r * (1.0 - r) / (1.0 + r)
        high = beta * r + (1.0 - beta) * r * (1.0 + r) / (1.0 - r)
        return (
            Enclosure.point(low, 8.0 * _spacing(low)),
            Enclosure.point(high, 8.0 * _spacing(high)),
        )
    share = 0.2 * eps
    if isinstance(params, W0H):
        alt = eval_alternating(w0h_power_rule(params.alpha, r, alternating=True), share)
        pos = eval_tail_bounded(w0h_power_rule(params.alpha, r), share)
    else:
        alt = eval_alternating(gkh_power_rule(params.k, params.alpha, r, alternating=True), share)
        pos = eval_tail_bounded(gkh_power_rule(params.k, params.alpha, r), share)
    return alt.scaled(2.0).shifted(r), pos.scaled(2.0).shifted(r)


def boundary_distance_lower(params: ClassParams, eps: float = 1e-10) -> Enclosure:
    """Class-wide lower bound on d(f(0), boundary of f(D)).

    beta for TildeG0H (exact); 1 + 2C for the other classes, where C is
    the class's alternating constant.  Strictly positive for every
    admissible parameter choice.
    """
    if isinstance(params, TildeG0H):
        return Enclosure(params.beta, params.beta)
    if isinstance(params, W0H):
        c = w0h_distance_constant(params.alpha, 0.2 * eps)
    else:
        c = gkh_distance_constant(params.k, params.alpha, 0.2 * eps)
    return c.scaled(2.0).shifted(1.0)


def _spacing(x: float) -> float:
    return math.ulp(abs(x)) if x != 0.0 else 0.0
