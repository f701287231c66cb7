"""Theorem functionals on concrete models, sharpness, sampling, membership."""

import math

import numpy as np
import pytest

from bohrlab import (
    GkH, T31, T32, T33, T34, T35, T36, TA, TildeG0H, W0H,
    HarmonicModel,
    Status,
    area_ratio,
    bohr_sum,
    check_theorem,
    coeff_bound_sum,
    extremal_model,
    fuzz_campaign,
    identity_model,
    membership_spot_check,
    modulus_sup,
    sample_admissible_model,
    sharpness_detail,
    sharpness_gap,
    theorem_b_functional,
)
from bohrlab.errors import MismatchedVariant, OutOfRange

LN2 = math.log(2.0)


def model_from(a_entries, b_entries=(), size=8):
    a = np.zeros(size, complex)
    a[1] = 1.0
    for n, v in a_entries:
        a[n] = v
    b = np.zeros(size, complex)
    for n, v in b_entries:
        b[n] = v
    return HarmonicModel(a, b)


def disk_area_quadrature(model, r, rho_nodes=24, thetas=256):
    """Independent oracle: (1/pi) int int (|h'|^2 - |g'|^2) over |z| < r.

    Gauss-Legendre in the radius (exact for the polynomial radial part)
    times a uniform angular grid (exact for trigonometric polynomials of
    degree < thetas).
    """
    x, w = np.polynomial.legendre.leggauss(rho_nodes)
    rho = 0.5 * r * (x + 1.0)
    w = 0.5 * r * w
    theta = 2.0 * np.pi * np.arange(thetas) / thetas
    z = rho[:, None] * np.exp(1j * theta[None, :])
    ns = np.arange(model.a.shape[0])
    hp = np.polynomial.polynomial.polyval(z, (model.a * ns)[1:])
    gp = np.polynomial.polynomial.polyval(z, (model.b * ns)[1:])
    integrand = np.abs(hp) ** 2 - np.abs(gp) ** 2
    angular = integrand.mean(axis=1) * 2.0 * np.pi
    return float(np.sum(w * rho * angular)) / np.pi


class TestBohrSum:
    def test_identity_is_r(self):
        assert bohr_sum(identity_model(), 0.37) == 0.37

    def test_tilde_extremal_geometric(self):
        m = extremal_model(TildeG0H(0.5), 50)
        assert bohr_sum(m, 0.2) == pytest.approx(0.25, abs=1e-14)

    def test_w0h_extremal_log(self):
        m = extremal_model(W0H(0.0), 50)
        assert bohr_sum(m, 0.3) == pytest.approx(0.3 + 2.0 * (-math.log(0.7) - 0.3), abs=1e-13)

    def test_from_index(self):
        m = extremal_model(TildeG0H(0.5), 10)
        full = bohr_sum(m, 0.2, from_index=2)
        later = bohr_sum(m, 0.2, from_index=4)
        assert later == pytest.approx(full - 0.2 ** 2 - 0.2 ** 3, abs=1e-15)
        with pytest.raises(OutOfRange):
            bohr_sum(m, 0.2, from_index=1)

    def test_r_validated(self):
        with pytest.raises(OutOfRange):
            bohr_sum(identity_model(), 1.0)


class TestModulusSup:
    def test_identity(self):
        assert modulus_sup(identity_model(), 0.4) == pytest.approx(0.4, abs=1e-14)

    def test_zero_radius(self):
        m = extremal_model(W0H(0.3), 20)
        assert modulus_sup(m, 0.0) == 0.0

    def test_positive_coefficients_peak_at_theta0(self):
        m = extremal_model(TildeG0H(0.5), 50)
        assert modulus_sup(m, 0.2) == pytest.approx(0.25, abs=1e-13)

    def test_grid_validated(self):
        with pytest.raises(OutOfRange):
            modulus_sup(identity_model(), 0.2, grid=4)


class TestAreaRatio:
    def test_identity(self):
        assert area_ratio(identity_model(), 0.5) == 0.25

    def test_a2_model(self):
        m = model_from([(2, 1.0)])
        assert area_ratio(m, 0.5) == pytest.approx(0.375, abs=1e-15)

    def test_zero_radius(self):
        assert area_ratio(model_from([(2, 0.3), (4, 0.1j)]), 0.0) == 0.0

    def test_matches_quadrature_oracle(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            a_entries = [(n, rng.normal() * 0.4 + 0.2j * rng.normal()) for n in (2, 3, 5)]
            b_entries = [(n, rng.normal() * 0.3) for n in (2, 4)]
            m = model_from(a_entries, b_entries, size=7)
            for r in (0.3, 0.6):
                assert area_ratio(m, r) == pytest.approx(disk_area_quadrature(m, r), abs=1e-6)


class TestCheckTheorem:
    def test_subcritical_margin(self):
        m = extremal_model(TildeG0H(0.5), 50)
        v = check_theorem(m, TildeG0H(0.5), T31(0.5), 0.1)
        assert v.status is Status.HOLDS
        assert v.margin == pytest.approx(0.5 - (0.2 + 2.0 * 0.01 / 0.9), abs=1e-9)

    def test_equality_at_radius(self):
        m = extremal_model(TildeG0H(0.5), 2000)
        v = check_theorem(m, TildeG0H(0.5), T31(0.5), 0.2)
        assert v.status is Status.HOLDS
        assert abs(v.margin) <= 1e-9

    def test_identity_at_zero(self):
        v = check_theorem(identity_model(), W0H(0.0), T33(0.0), 0.0)
        assert v.status is Status.HOLDS
        assert v.margin == pytest.approx(2.0 * LN2 - 1.0, abs=1e-9)

    def test_mismatched_variant(self):
        with pytest.raises(MismatchedVariant):
            check_theorem(identity_model(), W0H(0.0), T31(0.5), 0.1)
        with pytest.raises(MismatchedVariant):
            check_theorem(identity_model(), W0H(0.1), T33(0.2), 0.1)
        with pytest.raises(MismatchedVariant):
            check_theorem(identity_model(), W0H(0.1), TA(2), 0.1)

    def test_violating_model_fails(self):
        # a2 far above the bound pushes the LHS past the distance bound
        m = model_from([(2, 10.0)])
        v = check_theorem(m, TildeG0H(0.5), T31(0.5), 0.4)
        assert v.status is Status.FAILS
        assert v.margin < 0.0

    @pytest.mark.parametrize("theorem,params", [
        (T31(0.5), TildeG0H(0.5)), (T32(0.5), TildeG0H(0.5)),
        (T34(0.25), W0H(0.25)), (T36(2, 1.0), GkH(2, 1.0)),
    ])
    def test_lhs_nondecreasing_in_r(self, theorem, params):
        from bohrlab.verify import theorem_lhs
        m = sample_admissible_model(params, 11, 40)
        values = [theorem_lhs(m, theorem, float(r)) for r in np.linspace(0.0, 0.9, 12)]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


class TestSharpness:
    def test_t31_zero_gap(self):
        assert abs(sharpness_gap(T31(0.5))) <= 1e-8

    def test_t33_alpha0(self):
        assert abs(sharpness_gap(T33(0.0))) <= 1e-6

    def test_k2_gap_recorded(self):
        d = sharpness_detail(T35(2, 1.0))
        assert d.gap < 0.0  # lacunary extremal misses the full-range sum
        assert abs(d.gap) < 0.05

    def test_ta_has_no_extremal(self):
        with pytest.raises(MismatchedVariant):
            sharpness_gap(TA(2))


class TestSampler:
    @pytest.mark.parametrize("params", [TildeG0H(0.3), W0H(0.5), GkH(2, 1.0)])
    def test_deterministic(self, params):
        m1 = sample_admissible_model(params, 123, 40)
        m2 = sample_admissible_model(params, 123, 40)
        assert np.array_equal(m1.a, m2.a) and np.array_equal(m1.b, m2.b)
        m3 = sample_admissible_model(params, 124, 40)
        assert not np.array_equal(m3.a, m1.a)

    @pytest.mark.parametrize("params", [TildeG0H(0.3), W0H(0.5), GkH(2, 1.0), GkH(3, 0.5)])
    def test_bounds_respected(self, params):
        for seed in range(100):
            m = sample_admissible_model(params, seed, 32)
            mags = m.coeff_mag_sums()
            for n in range(2, 33):
                assert mags[n] <= coeff_bound_sum(params, n)

    def test_gkh_support_is_lacunary(self):
        m = sample_admissible_model(GkH(3, 1.0), 9, 20)
        mags = m.coeff_mag_sums()
        for n in range(2, 21):
            if (n - 1) % 3 != 0:
                assert mags[n] == 0.0

    def test_scaled_extremal_passes_membership(self):
        base = extremal_model(TildeG0H(0.4), 200)
        a = base.a.copy()
        a[2:] *= 0.99
        scaled = HarmonicModel(a, base.b)
        assert membership_spot_check(scaled, TildeG0H(0.4)).status is Status.HOLDS


class TestMembership:
    @pytest.mark.parametrize("params", [TildeG0H(0.3), W0H(0.4), GkH(2, 1.0)])
    def test_extremal_holds(self, params):
        m = extremal_model(params, 200)
        assert membership_spot_check(m, params).status is Status.HOLDS

    def test_violator_fails_with_witness(self):
        m = model_from([(2, 10.0)])
        v = membership_spot_check(m, TildeG0H(0.5))
        assert v.status is Status.FAILS
        assert "r=" in v.details and "theta=" in v.details

    def test_identity_holds_everywhere(self):
        for params in (TildeG0H(0.7), W0H(0.6), GkH(2, 2.0)):
            assert membership_spot_check(identity_model(), params).status is Status.HOLDS

    def test_grid_validation(self):
        with pytest.raises(OutOfRange):
            membership_spot_check(identity_model(), W0H(0.0), radial_grid=3)
        with pytest.raises(OutOfRange):
            membership_spot_check(identity_model(), W0H(0.0), radial_grid=[0.1, 0.5, 0.9, 1.0])


class TestTheoremB:
    def test_identity_at_third(self):
        assert theorem_b_functional([0.0, 1.0], 1.0 / 3.0) == pytest.approx(43.0 / 81.0, abs=1e-15)

    def test_mobius_third(self):
        a = 1.0 / 3.0
        coeffs = [a] + [-(1.0 - a * a) * a ** (n - 1) for n in range(1, 60)]
        value = theorem_b_functional(coeffs, 1.0 / 3.0)
        assert value == pytest.approx(2.0 / 3.0 + (16.0 / 9.0) * 0.09, abs=1e-12)
        assert value <= 1.0

    def test_zero_function(self):
        assert theorem_b_functional([0.0], 0.2) == 0.0

    def test_r_validated(self):
        with pytest.raises(OutOfRange):
            theorem_b_functional([0.0, 1.0], 1.0)


class TestFuzz:
    def test_small_campaign_holds(self):
        s = fuzz_campaign(T33(0.25), samples=50, seed=3, truncation=48)
        assert s.fails == 0
        assert s.holds + s.inconclusive == 50
        assert s.worst_margin > 0.0

    def test_spot_check_filter_runs(self):
        # the necessary-condition sampler rarely satisfies the full
        # membership inequality, so keep the filtered campaign tiny
        s = fuzz_campaign(T31(0.5), samples=3, seed=1, truncation=4, spot_check=True)
        assert s.samples == 3
        assert s.spot_rejected > 0
        assert s.fails == 0

    def test_extremal_dominance_termwise_and_functional(self):
        for params in (TildeG0H(0.5), W0H(0.25), GkH(2, 1.0)):
            ext = extremal_model(params, 48)
            ext_mags = ext.coeff_mag_sums()
            for seed in range(50):
                m = sample_admissible_model(params, seed, 48)
                assert np.all(m.coeff_mag_sums()[2:] <= ext_mags[2:] + 1e-15)
                for r in (0.2, 0.5, 0.8):
                    assert bohr_sum(m, r) <= bohr_sum(ext, r) + 1e-12
                    assert area_ratio(m, r) <= area_ratio(ext, r) + 1e-12

    def test_ta_rejected(self):
        with pytest.raises(MismatchedVariant):
            fuzz_campaign(TA(1), samples=5, seed=0, truncation=16)
