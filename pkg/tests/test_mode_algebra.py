"""Mode algebra: orthonormality, Parseval, Gram-Schmidt, Gaussian moments."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from comb_ranger import (
    GaussianPulse,
    SpectralMode,
    gaussian_mode,
    gram_schmidt,
    hermite_gauss,
    inner_product,
    quadrature_inner_product,
    sampling_grid,
)
from comb_ranger.errors import DomainError, ValidationError
from comb_ranger.mode_algebra import (
    export_profile,
    gaussian_envelope,
    real_profile,
    sample,
)

PULSE = GaussianPulse.from_wavelength(800e-9)
GRID = sampling_grid(PULSE)


def quad(f_mode, g_mode):
    return quadrature_inner_product(sample(f_mode, GRID), sample(g_mode, GRID), GRID, PULSE)


class TestGaussianMode:
    def test_unit_norm_and_phase(self):
        u = gaussian_mode(PULSE)
        assert u.coefficients == (-1j,)
        assert inner_product(u, u) == 1.0 + 0j

    def test_sampled_form_is_the_envelope(self):
        u = gaussian_mode(PULSE)
        assert_allclose(sample(u, GRID), gaussian_envelope(PULSE, GRID), atol=1e-18)

    def test_moments_by_quadrature(self):
        density = gaussian_envelope(PULSE, GRID) ** 2
        d = GRID - PULSE.omega0
        norm = np.trapezoid(density, GRID)
        assert norm == pytest.approx(1.0, abs=1e-8)
        first = np.trapezoid(d * density, GRID)
        second = np.trapezoid(d**2 * density, GRID)
        third = np.trapezoid(d**3 * density, GRID)
        fourth = np.trapezoid(d**4 * density, GRID)
        assert abs(first) < 1e-10 * PULSE.delta_omega
        assert second == pytest.approx(PULSE.delta_omega**2, rel=1e-6)
        assert abs(third) < 1e-10 * PULSE.delta_omega**3
        assert fourth == pytest.approx(3.0 * PULSE.delta_omega**4, rel=1e-6)


class TestHermiteGauss:
    def test_coefficient_representation(self):
        v3 = hermite_gauss(3, PULSE)
        assert v3.coefficients == (0j, 0j, 0j, 1 + 0j)
        assert v3.is_normalized()

    def test_orthonormality_exact_and_by_quadrature(self):
        modes = [hermite_gauss(n, PULSE) for n in range(5)]
        for m, f in enumerate(modes):
            for n, g in enumerate(modes):
                assert inner_product(f, g) == (1.0 if m == n else 0.0)
                assert quad(f, g) == pytest.approx(1.0 if m == n else 0.0, abs=1e-8)

    def test_orthonormality_up_to_max_order(self):
        modes = [hermite_gauss(n, PULSE) for n in range(9)]
        for m, f in enumerate(modes):
            for n, g in enumerate(modes):
                assert inner_product(f, g) == (1.0 if m == n else 0.0)

    def test_v2_sampled_form(self):
        v2 = hermite_gauss(2, PULSE)
        x = (GRID - PULSE.omega0) / PULSE.delta_omega
        expected = 1j / math.sqrt(2.0) * (x**2 - 1.0) * gaussian_envelope(PULSE, GRID)
        assert_allclose(sample(v2, GRID), expected, atol=1e-16)

    def test_v1_zero_at_carrier(self):
        v1 = hermite_gauss(1, PULSE)
        assert sample(v1, np.array([PULSE.omega0]))[0] == 0.0

    def test_order_overflow(self):
        with pytest.raises(ValidationError):
            hermite_gauss(9, PULSE)
        hermite_gauss(12, PULSE, max_order=12)


class TestInnerProduct:
    def test_pulse_mismatch_rejected(self):
        other = GaussianPulse.from_wavelength(1064e-9)
        with pytest.raises(ValidationError):
            inner_product(gaussian_mode(PULSE), gaussian_mode(other))

    def test_conjugate_symmetry(self):
        f = SpectralMode(PULSE, (0.3 + 0.1j, -0.2j, 0.5))
        g = SpectralMode(PULSE, (0.1, 0.7 - 0.4j))
        assert inner_product(f, g) == pytest.approx(np.conj(inner_product(g, f)))

    def test_norm_real_nonnegative(self):
        f = SpectralMode(PULSE, (0.3 + 0.1j, -0.2j, 0.5))
        ip = inner_product(f, f)
        assert ip.imag == 0.0
        assert ip.real >= 0.0

    def test_gvd_phase_overlap(self):
        # <v0, v0/sqrt(3) + sqrt(2/3) v2> = 1/sqrt(3)
        w_gvd = SpectralMode(PULSE, (1 / math.sqrt(3), 0.0, math.sqrt(2 / 3)))
        assert inner_product(hermite_gauss(0, PULSE), w_gvd).real == pytest.approx(
            1 / math.sqrt(3), rel=1e-15
        )


coefficients = st.lists(
    st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=5,
).filter(lambda cs: sum(abs(c) ** 2 for c in cs) > 1e-6)


@settings(max_examples=25, deadline=None)
@given(cf=coefficients, cg=coefficients)
def test_parseval_coefficients_vs_quadrature(cf, cg):
    f = SpectralMode(PULSE, tuple(cf))
    g = SpectralMode(PULSE, tuple(cg))
    exact = inner_product(f, g)
    numeric = quad(f, g)
    assert numeric == pytest.approx(exact, abs=1e-8)


class TestQuadrature:
    def test_shape_mismatch(self):
        with pytest.raises(ValidationError):
            quadrature_inner_product(np.ones(4), np.ones(5), np.linspace(0, 1, 4))

    def test_insufficient_coverage(self):
        narrow = np.linspace(
            PULSE.omega0 - 2 * PULSE.delta_omega, PULSE.omega0 + 2 * PULSE.delta_omega, 4096
        )
        u = gaussian_mode(PULSE)
        with pytest.raises(ValidationError):
            quadrature_inner_product(sample(u, narrow), sample(u, narrow), narrow, PULSE)

    def test_too_few_points(self):
        with pytest.raises(ValidationError):
            sampling_grid(PULSE, points=512)


class TestGramSchmidt:
    def test_orthonormal_input_unchanged(self):
        modes = [hermite_gauss(n, PULSE) for n in range(3)]
        out = gram_schmidt(modes)
        for got, expect in zip(out, modes):
            assert_allclose(got.padded(2), expect.padded(2), atol=1e-12)

    def test_textbook_case(self):
        v0 = hermite_gauss(0, PULSE)
        mix = SpectralMode(PULSE, (1.0, 1.0))
        out = gram_schmidt([v0, mix])
        assert_allclose(out[0].padded(1), [1.0, 0.0], atol=1e-14)
        assert_allclose(out[1].padded(1), [0.0, 1.0], atol=1e-14)

    def test_pairwise_orthonormal(self):
        raw = [
            SpectralMode(PULSE, (1.0, 0.2, 0.1)),
            SpectralMode(PULSE, (0.9, 0.3, 0.0, 0.05)),
            SpectralMode(PULSE, (0.0, 1.0, -0.4)),
        ]
        out = gram_schmidt(raw)
        for i, f in enumerate(out):
            for j, g in enumerate(out):
                assert inner_product(f, g) == pytest.approx(1.0 if i == j else 0.0, abs=1e-10)

    def test_idempotent(self):
        raw = [
            SpectralMode(PULSE, (1.0, 0.2, 0.1)),
            SpectralMode(PULSE, (0.9, 0.3, 0.0, 0.05)),
        ]
        once = gram_schmidt(raw)
        twice = gram_schmidt(once)
        for a, b in zip(once, twice):
            assert_allclose(a.padded(3), b.padded(3), atol=1e-12)

    def test_projection_formula_for_second_output(self):
        # second output must equal (b - <a,b> a) / sqrt(1 - <a,b>^2) for
        # normalized inputs; checked coefficient-wise on a nearly parallel pair
        a = SpectralMode(PULSE, (1.0, 0.0, 0.0))
        b = SpectralMode(PULSE, (0.999, 0.04, 0.01)).normalized()
        out = gram_schmidt([a, b])
        ov = inner_product(a, b).real
        expected = (b.padded(2) - ov * a.padded(2)) / math.sqrt(1.0 - ov**2)
        assert_allclose(out[1].padded(2), expected, atol=1e-13)

    def test_near_dependence_reports_index(self):
        raw = [
            SpectralMode(PULSE, (1.0, 0.0)),
            SpectralMode(PULSE, (0.5, 0.5)),
            SpectralMode(PULSE, (1.0, 1.0 + 1e-15)),
        ]
        with pytest.raises(DomainError, match="mode 2"):
            gram_schmidt(raw)

    def test_sequential_dependence_on_prefix(self):
        # k-th output must not change when later inputs change
        first_two = [
            SpectralMode(PULSE, (1.0, 0.2)),
            SpectralMode(PULSE, (0.3, 1.0)),
        ]
        full = first_two + [SpectralMode(PULSE, (0.1, 0.1, 1.0))]
        out_short = gram_schmidt(first_two)
        out_full = gram_schmidt(full)
        for a, b in zip(out_short, out_full[:2]):
            assert_allclose(a.padded(2), b.padded(2), atol=0.0)


class TestProfiles:
    def test_real_profile_of_u_is_gaussian(self):
        u = gaussian_mode(PULSE)
        assert_allclose(real_profile(u, GRID), gaussian_envelope(PULSE, GRID), atol=1e-18)

    def test_real_profile_rejects_mixed_phase(self):
        mixed = SpectralMode(PULSE, (1.0, 1j))
        with pytest.raises(DomainError):
            real_profile(mixed, GRID)

    def test_export_two_columns_unit_norm(self, tmp_path):
        path = tmp_path / "v1.txt"
        export_profile(hermite_gauss(1, PULSE), path, points=2049, half_width=8.0)
        data = np.loadtxt(path)
        assert data.shape == (2049, 2)
        norm = np.trapezoid(data[:, 1] ** 2, data[:, 0])
        assert norm == pytest.approx(1.0, abs=1e-6)
