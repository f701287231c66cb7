"""Evaluate theorem functionals on concrete models and stress-test them.

The radius theorems bound a left-hand side built from three ingredients:
the majorant (Bohr) sum, the modulus of f on a circle, and the normalized
image area.  This module computes those on truncated models, compares
them against the class distance bound, measures sharpness at the solved
radii, and fuzzes coefficient space under the necessary per-index bounds.

Fuzzing honesty: samples satisfy the *necessary* coefficient conditions
of class membership only (sufficiency is undecidable from a truncation);
every campaign summary says so, and a membership spot check can be
enabled as a filter.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import classes as cl
from . import radii as rd
from .classes import ClassParams, GkH, HarmonicModel, TildeG0H, W0H
from .errors import MismatchedVariant, OutOfRange


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    status: Status
    margin: float      # RHS - LHS, signed; positive is safe
    at_r: float
    details: str


def _check_radius(r: float) -> float:
    r = float(r)
    if not (0.0 <= r < 1.0):
        raise OutOfRange(f"r={r!r} outside required range [0, 1)")
    return r


def bohr_sum(model: HarmonicModel, r: float, from_index: int = 2) -> float:
    """r + sum_{n >= from_index} (|a_n| + |b_n|) r^n over the truncation."""
    r = _check_radius(r)
    if int(from_index) != from_index or from_index < 2:
        raise OutOfRange(f"from_index={from_index!r} must be an integer >= 2")
    mags = model.coeff_mag_sums()
    ns = np.arange(mags.shape[0])
    sel = ns >= from_index
    return r + float(np.sum(mags[sel] * r ** ns[sel]))


def modulus_sup(model: HarmonicModel, r: float, grid: int = 720) -> float:
    """max over a uniform angle grid of |f(r e^(i theta))|.

    A grid maximum under-approximates the true sup in general; for models
    with nonnegative real coefficients and b = 0 the maximum sits at
    theta = 0 (on the grid), so the value is exact there.
    """
    r = _check_radius(r)
    if int(grid) != grid or grid < 8:
        raise OutOfRange(f"grid={grid!r} must be an integer >= 8")
    theta = 2.0 * np.pi * np.arange(int(grid)) / int(grid)
    z = r * np.exp(1j * theta)
    return float(np.max(np.abs(model.value_at(z))))


def area_ratio(model: HarmonicModel, r: float) -> float:
    """S_r / pi = r^2 + sum_{n>=2} n (|a_n|^2 - |b_n|^2) r^(2n).

    Equals the Jacobian integral (1/pi) int int (|h'|^2 - |g'|^2) over
    |z| < r exactly for the truncated model.
    """
    r = _check_radius(r)
    ns = np.arange(2, model.a.shape[0])
    diff = np.abs(model.a[2:]) ** 2 - np.abs(model.b[2:]) ** 2
    return r * r + float(np.sum(ns * diff * r ** (2 * ns)))


# ---------------------------------------------------------------------------
# Theorem checks

_MODULUS_FORM = (rd.T31, rd.T33, rd.T35)
_AREA_FORM = (rd.T32, rd.T34, rd.T36)


def _lhs_from_index(theorem) -> int:
    return theorem.k + 1 if isinstance(theorem, (rd.T35, rd.T36)) else 2


def theorem_lhs(model: HarmonicModel, theorem: rd.RadiusProblem, r: float,
                grid: int = 720) -> float:
    """The theorem's left-hand side on a concrete model at |z| = r."""
    from_index = _lhs_from_index(theorem)
    if isinstance(theorem, _MODULUS_FORM):
        return modulus_sup(model, r, grid) + bohr_sum(model, r, from_index)
    if isinstance(theorem, _AREA_FORM):
        return bohr_sum(model, r, from_index) + area_ratio(model, r)
    raise MismatchedVariant(f"{theorem!r} has no model-level left-hand side")


def check_theorem(model: HarmonicModel, params: ClassParams,
                  theorem: rd.RadiusProblem, r: float, tol: float = 1e-9,
                  grid: int = 720) -> Verdict:
    """Compare the theorem LHS on a model against the class distance bound.

    The right-hand side is the class-wide lower bound on
    d(f(0), boundary), the quantity the proofs actually compare against
    and the sharp choice at the extremal.  The per-function distance is
    not used: a truncation cannot determine it.
    """
    r = _check_radius(r)
    expected = rd.problem_class(theorem)
    if expected is None or expected != params:
        raise MismatchedVariant(f"theorem {theorem!r} does not match class {params!r}")
    lhs = theorem_lhs(model, theorem, r, grid)
    rhs = cl.boundary_distance_lower(params)
    margin = rhs.mid - lhs
    if rhs.lo - lhs >= -tol:
        status = Status.HOLDS
    elif rhs.hi - lhs < -tol:
        status = Status.FAILS
    else:
        status = Status.INCONCLUSIVE
    details = f"lhs={lhs:.12g} rhs=[{rhs.lo:.12g}, {rhs.hi:.12g}] r={r:.12g}"
    return Verdict(status=status, margin=margin, at_r=r, details=details)


# ---------------------------------------------------------------------------
# Sharpness at the solved radius


@dataclass(frozen=True)
class SharpnessResult:
    theorem: rd.RadiusProblem
    r: float
    gap: float         # LHS(extremal, r) - RHS; ~0 where the bound is attained
    truncation: int
    half_width: float  # of the solved root bracket


def _extremal_truncation(r: float, budget: float, floor: int) -> int:
    # Geometric tail of every LHS ingredient at the extremal is below
    # 8 r^(N+1) / (1-r)^2; pick N so it stays under the budget.
    target = budget * (1.0 - r) ** 2 / 8.0
    n = int(math.ceil(math.log(target) / math.log(r))) if 0.0 < r < 1.0 else floor
    return min(max(n, floor, 32), 200_000)


def sharpness_detail(theorem: rd.RadiusProblem, tol: float = 1e-6,
                     grid: int = 720) -> SharpnessResult:
    """Solve the radius, evaluate the extremal there, return LHS - RHS.

    Expected ~0 (up to truncation) wherever the radius is attained by the
    class extremal: all beta/alpha cases, and the lacunary classes with
    k = 1.  For k >= 2 the measured (typically negative) gap is reported
    as-is; the full-range tail sum in Q5/Q6 exceeds what the lacunary
    extremal can realize, so attainment there is an open point that this
    function measures rather than assumes.
    """
    params = rd.problem_class(theorem)
    if params is None:
        raise MismatchedVariant("sharpness is defined for the class theorems only")
    root = rd.solve_radius(theorem, tol=min(1e-10, 0.01 * tol))
    floor = params.k + 1 if isinstance(params, GkH) else 2
    trunc = _extremal_truncation(root.r, 0.05 * tol, floor)
    model = cl.extremal_model(params, trunc)
    lhs = theorem_lhs(model, theorem, root.r, grid)
    rhs = cl.boundary_distance_lower(params)
    return SharpnessResult(theorem=theorem, r=root.r, gap=lhs - rhs.mid,
                           truncation=trunc, half_width=root.half_width)


def sharpness_gap(theorem: rd.RadiusProblem, tol: float = 1e-6) -> float:
    return sharpness_detail(theorem, tol).gap


# ---------------------------------------------------------------------------
# Sampling and membership


def sample_admissible_model(params: ClassParams, seed: int, truncation: int) -> HarmonicModel:
    """Deterministic random model satisfying the per-index bound
    |a_n| + |b_n| <= coeff_bound_sum(params, n).

    These are necessary conditions for class membership, not sufficient
    ones.  For GkH the support is restricted to the lacunary index set
    {kj + 1} that the class extremal populates, which keeps sampled
    models termwise dominated by the extremal.
    """
    if int(truncation) != truncation or truncation < 2:
        raise OutOfRange(f"truncation={truncation!r} must be an integer >= 2")
    truncation = int(truncation)
    rng = np.random.default_rng(seed)
    a = np.zeros(truncation + 1, dtype=np.complex128)
    b = np.zeros(truncation + 1, dtype=np.complex128)
    a[1] = 1.0
    idx = cl.extremal_indices(params, truncation)
    if idx.size:
        bounds = cl._bound_array(params, idx)
        # strict headroom so rounding in the magnitude split can never
        # push |a_n| + |b_n| past the bound
        total = bounds * rng.uniform(0.0, 0.999999, idx.size)
        split = rng.uniform(0.0, 1.0, idx.size)
        pha = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, idx.size))
        phb = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, idx.size))
        a[idx] = total * split * pha
        b[idx] = total * (1.0 - split) * phb
    return HarmonicModel(a, b)


def _grid_values(spec: Union[int, Sequence[float]], lo: float, hi: float) -> np.ndarray:
    if isinstance(spec, (int, np.integer)):
        if spec < 4:
            raise OutOfRange(f"grid={spec!r} must have at least 4 points")
        return np.linspace(lo, hi, int(spec))
    vals = np.asarray(spec, dtype=np.float64)
    if vals.size < 4:
        raise OutOfRange("grid must have at least 4 points")
    return vals


def membership_spot_check(model: HarmonicModel, params: ClassParams,
                          radial_grid: Union[int, Sequence[float]] = 12,
                          angular_grid: Union[int, Sequence[float]] = 64) -> Verdict:
    """Test the class's defining inequality on a polar grid.

    FAILS with a witness point when the inequality is violated; HOLDS
    means "not falsified on this grid" and nothing stronger.  Integer
    grid arguments expand to radii in [0.05, 0.95] and a full turn of
    angles; explicit radii must stay <= 0.999.
    """
    radii = _grid_values(radial_grid, 0.05, 0.95)
    if np.any(radii > 0.999) or np.any(radii <= 0.0):
        raise OutOfRange("radii must lie in (0, 0.999]")
    if isinstance(angular_grid, (int, np.integer)):
        if angular_grid < 4:
            raise OutOfRange(f"grid={angular_grid!r} must have at least 4 points")
        angles = 2.0 * np.pi * np.arange(int(angular_grid)) / int(angular_grid)
    else:
        angles = np.asarray(angular_grid, dtype=np.float64)
        if angles.size < 4:
            raise OutOfRange("grid must have at least 4 points")

    z = radii[:, None] * np.exp(1j * angles[None, :])
    pv = np.polynomial.polynomial.polyval
    if isinstance(params, TildeG0H):
        h_over_z = pv(z, model.a[1:])
        g_over_z = pv(z, model.b[1:])
        margin = np.real(h_over_z) - params.beta - np.abs(g_over_z)
    elif isinstance(params, W0H):
        ns = np.arange(model.a.shape[0])
        d1a, d1b = model.a * ns, model.b * ns
        d2a, d2b = d1a * (ns - 1), d1b * (ns - 1)
        hp, gp = pv(z, d1a[1:]), pv(z, d1b[1:])
        hpp, gpp = pv(z, d2a[2:]), pv(z, d2b[2:])
        alpha = params.alpha
        margin = np.real(hp + alpha * z * hpp) - np.abs(gp + alpha * z * gpp)
    else:
        ns = np.arange(model.a.shape[0])
        hp = pv(z, (model.a * ns)[1:])
        gp = pv(z, (model.b * ns)[1:])
        h_over_z = pv(z, model.a[1:])
        g_over_z = pv(z, model.b[1:])
        al = params.alpha
        margin = (np.real((1.0 - al) * h_over_z + al * hp)
                  - np.abs((1.0 - al) * g_over_z + al * gp))

    worst_flat = int(np.argmin(margin))
    i, j = np.unravel_index(worst_flat, margin.shape)
    worst = float(margin[i, j])
    at_r = float(radii[i])
    point = f"r={at_r:.6g}, theta={float(angles[j]):.6g}"
    if worst <= 0.0:
        return Verdict(Status.FAILS, worst, at_r, f"violated at {point} (margin {worst:.6g})")
    return Verdict(Status.HOLDS, worst, at_r,
                   f"not falsified on grid; smallest margin {worst:.6g} at {point}")


# ---------------------------------------------------------------------------
# Analytic-case functional (self-maps of the disk)


def theorem_b_functional(analytic_coeffs: Sequence[complex], r: float) -> float:
    """Majorant-plus-area functional for an analytic self-map of the disk:
    sum |a_n| r^n + (16/9) sum_{n>=1} n |a_n|^2 r^(2n).

    The bound by 1 is guaranteed for r <= 1/3; the functional itself is
    computable on [0, 1).
    """
    r = _check_radius(r)
    mags = np.abs(np.asarray(analytic_coeffs, dtype=np.complex128))
    ns = np.arange(mags.shape[0])
    majorant = float(np.sum(mags * r ** ns))
    area = float(np.sum(ns[1:] * mags[1:] ** 2 * r ** (2 * ns[1:])))
    return majorant + (16.0 / 9.0) * area


# ---------------------------------------------------------------------------
# Fuzz campaigns


@dataclass(frozen=True)
class FuzzSummary:
    theorem: rd.RadiusProblem
    params: ClassParams
    r: float
    samples: int
    holds: int
    fails: int
    inconclusive: int
    worst_margin: float
    worst_seed: int
    spot_rejected: int
    first_failure: Optional[str]
    margins: np.ndarray = field(repr=False)


def fuzz_campaign(theorem: rd.RadiusProblem, samples: int, seed: int,
                  truncation: int, r: Optional[float] = None,
                  tol: float = 1e-9, grid: int = 720,
                  spot_check: bool = False) -> FuzzSummary:
    """Check a theorem on ``samples`` seeded admissible models.

    Models satisfy the necessary coefficient bounds only (see
    sample_admissible_model).  When ``r`` is omitted the campaign runs at
    0.9 times the solved radius.  With ``spot_check`` enabled, samples
    falsified by the membership grid test are dropped (and counted).
    """
    params = rd.problem_class(theorem)
    if params is None:
        raise MismatchedVariant("fuzzing is defined for the class theorems only")
    if r is None:
        r = 0.9 * rd.solve_radius(theorem, tol=1e-10).r
    r = _check_radius(r)
    counts = {Status.HOLDS: 0, Status.FAILS: 0, Status.INCONCLUSIVE: 0}
    margins = np.empty(samples)
    worst_margin = math.inf
    worst_seed = seed
    rejected = 0
    first_failure = None
    kept = 0
    offset = 0
    max_attempts = 200 * samples
    while kept < samples:
        if offset >= max_attempts:
            raise RuntimeError(
                f"spot-check filter rejected {rejected} of {offset} samples; "
                "not enough admissible models at this truncation"
            )
        s = seed + offset
        offset += 1
        model = sample_admissible_model(params, s, truncation)
        if spot_check and membership_spot_check(model, params).status is Status.FAILS:
            rejected += 1
            continue
        verdict = check_theorem(model, params, theorem, r, tol, grid)
        counts[verdict.status] += 1
        margins[kept] = verdict.margin
        if verdict.margin < worst_margin:
            worst_margin = verdict.margin
            worst_seed = s
        if verdict.status is Status.FAILS and first_failure is None:
            first_failure = f"seed={s}: {verdict.details}"
        kept += 1
    return FuzzSummary(
        theorem=theorem, params=params, r=r, samples=samples,
        holds=counts[Status.HOLDS], fails=counts[Status.FAILS],
        inconclusive=counts[Status.INCONCLUSIVE],
        worst_margin=worst_margin, worst_seed=worst_seed,
        spot_rejected=rejected, first_failure=first_failure, margins=margins,
    )
