"""Sampled-grid backend: spectral translation, decimation, dilation generator."""
import numpy as np
import pytest

from cvhistory.dyadic import DyadicWave, indicator_unit, squeeze
from cvhistory.errors import DomainError, ValidationError
from cvhistory.grid import (
    GridWave,
    compare_to_dyadic,
    dilation_generator,
    project_grid,
    sample_function,
    squeeze_resample,
    translate_shift,
    translate_spectral,
)

SQRT2 = np.sqrt(2.0)


def indicator01(x: float) -> float:
    return 1.0 if 0.0 <= x < 1.0 else 0.0


def band_limited_random(rng: np.random.Generator, n: int, x_min: float, h: float) -> GridWave:
    spectrum = np.zeros(n, dtype=np.complex128)
    low = n // 8
    spectrum[:low] = rng.normal(size=low) + 1j * rng.normal(size=low)
    spectrum[-low:] = rng.normal(size=low) + 1j * rng.normal(size=low)
    s = np.fft.ifft(spectrum)
    return GridWave(x_min, h, s / np.sqrt(h * np.sum(np.abs(s) ** 2)))


class TestConstruction:
    def test_power_of_two_required(self):
        with pytest.raises(ValidationError):
            GridWave(0.0, 0.5, np.ones(12))

    def test_positive_step_required(self):
        with pytest.raises(ValidationError):
            GridWave(0.0, -0.5, np.ones(4))

    def test_finite_samples_required(self):
        with pytest.raises(ValidationError):
            GridWave(0.0, 0.5, [np.nan, 0, 0, 0])


class TestSampleFunction:
    def test_indicator_on_small_window(self):
        g = sample_function(indicator01, -2.0, 0.25, 16)
        assert np.count_nonzero(g.samples) == 4
        xs = g.positions()[np.abs(g.samples) > 0]
        assert np.allclose(xs, [0.0, 0.25, 0.5, 0.75])

    def test_zero_function(self):
        g = sample_function(lambda x: 0.0, -1.0, 0.25, 8)
        assert np.all(g.samples == 0)

    def test_half_sine_norm(self):
        g = sample_function(
            lambda x: SQRT2 * np.sin(np.pi * x) if 0 <= x <= 1 else 0.0, -2.0, 4 / 4096, 4096
        )
        assert abs(g.norm2() - 1.0) <= 1e-3

    def test_invalid_config_rejected(self):
        with pytest.raises(ValidationError):
            sample_function(indicator01, 0.0, 0.25, 12)
        with pytest.raises(ValidationError):
            sample_function(indicator01, 0.0, 0.0, 16)


class TestTranslateShift:
    def test_zero_shift_identity(self):
        g = sample_function(indicator01, -2.0, 0.25, 16)
        assert np.array_equal(translate_shift(g, 0).samples, g.samples)

    def test_indicator_moves_one_unit(self):
        g = sample_function(indicator01, -2.0, 0.25, 16)
        ref = sample_function(lambda x: indicator01(x - 1.0), -2.0, 0.25, 16)
        assert np.array_equal(translate_shift(g, 1).samples, ref.samples)

    def test_roundtrip_bit_identical(self):
        rng = np.random.default_rng(2)
        g = GridWave(-2.0, 0.25, rng.normal(size=16) + 1j * rng.normal(size=16))
        back = translate_shift(translate_shift(g, 1), -1)
        assert np.array_equal(back.samples, g.samples)

    def test_misaligned_step_rejected(self):
        g = GridWave(-12.0, 3 / 64, np.ones(512))
        with pytest.raises(DomainError):
            translate_shift(g, 1)

    def test_non_integer_rejected(self):
        g = sample_function(indicator01, -2.0, 0.25, 16)
        with pytest.raises(DomainError):
            translate_shift(g, 0.5)


class TestTranslateSpectral:
    def test_zero_shift(self):
        rng = np.random.default_rng(3)
        g = band_limited_random(rng, 256, -8.0, 1 / 16)
        out = translate_spectral(g, 0.0)
        assert np.max(np.abs(out.samples - g.samples)) <= 1e-12

    def test_gaussian_unit_shift(self):
        g = sample_function(lambda x: np.exp(-(x**2) / 2), -8.0, 1 / 64, 1024)
        out = translate_spectral(g, 1.0)
        ref = np.exp(-((g.positions() - 1.0) ** 2) / 2)
        assert np.max(np.abs(out.samples - ref)) <= 1e-9

    def test_matches_index_shift_on_indicator(self):
        g = sample_function(indicator01, -8.0, 1 / 64, 1024)
        d = translate_spectral(g, 1.0).samples - translate_shift(g, 1).samples
        assert np.max(np.abs(d)) <= 1e-9

    def test_inverse_pair(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            g = band_limited_random(rng, 256, -8.0, 1 / 16)
            a = float(rng.uniform(-2, 2))
            back = translate_spectral(translate_spectral(g, a), -a)
            assert np.max(np.abs(back.samples - g.samples)) <= 1e-9


class TestProjectGrid:
    def test_fixes_own_range(self):
        g = sample_function(indicator01, -2.0, 0.25, 16)
        assert np.array_equal(project_grid(g, 0.0, 1.0).samples, g.samples)

    def test_disjoint_interval_zeroes(self):
        g = sample_function(lambda x: indicator01(x - 1.0), -2.0, 0.25, 16)
        assert np.all(project_grid(g, 0.0, 1.0).samples == 0)

    def test_idempotent_bit_identical(self):
        rng = np.random.default_rng(5)
        g = GridWave(-2.0, 0.25, rng.normal(size=16) + 1j * rng.normal(size=16))
        once = project_grid(g, -1.0, 0.5)
        twice = project_grid(once, -1.0, 0.5)
        assert np.array_equal(once.samples, twice.samples)

    def test_empty_interval_rejected(self):
        g = sample_function(indicator01, -2.0, 0.25, 16)
        with pytest.raises(DomainError):
            project_grid(g, 1.0, 1.0)


class TestSqueezeResample:
    def test_indicator(self):
        g = sample_function(indicator01, -2.0, 0.25, 16)
        out = squeeze_resample(g)
        ref = sample_function(lambda x: SQRT2 * indicator01(2 * x), -2.0, 0.25, 16)
        assert np.allclose(out.samples, ref.samples, atol=0)

    def test_zero_wave(self):
        g = sample_function(lambda x: 0.0, -2.0, 0.25, 16)
        assert np.all(squeeze_resample(g).samples == 0)

    def test_matches_dyadic_squeeze(self):
        w = DyadicWave(2, 0, [0.5, -1.0, 0.25j, 1.0, 0.5, 0.0, 1.0, -0.5j])
        g = sample_function(lambda x: complex(w.coeffs[int(x * 4) - w.offset]) if w.x_min <= x < w.x_max else 0.0, -4.0, 1 / 16, 128)
        rep = compare_to_dyadic(squeeze_resample(g), squeeze(w))
        assert rep.l2_err <= 1e-12 and rep.max_abs_err <= 1e-12

    def test_support_escape_rejected(self):
        g = sample_function(lambda x: 1.0 if 3.0 <= x < 3.5 else 0.0, 2.0, 1 / 8, 16)
        with pytest.raises(DomainError):
            squeeze_resample(g)


class TestDilationGenerator:
    def test_gaussian_squeeze(self):
        n, half = 512, 12.0
        h = 2 * half / n
        g = sample_function(lambda x: np.exp(-(x**2) / 2) / np.pi**0.25, -half, h, n)
        out = dilation_generator(g)
        ref = SQRT2 * np.exp(-2 * g.positions() ** 2) / np.pi**0.25
        num = np.sqrt(h * np.sum(np.abs(out.samples - ref) ** 2))
        den = np.sqrt(h * np.sum(np.abs(ref) ** 2))
        assert num / den <= 1e-4

    def test_gaussian_norm_preserved(self):
        n, half = 512, 12.0
        h = 2 * half / n
        g = sample_function(lambda x: np.exp(-(x**2) / 2) / np.pi**0.25, -half, h, n)
        assert abs(dilation_generator(g).norm2() - g.norm2()) <= 1e-6

    def test_zero_wave(self):
        g = sample_function(lambda x: 0.0, -4.0, 1 / 8, 64)
        assert np.max(np.abs(dilation_generator(g).samples)) <= 1e-12


class TestCompareToDyadic:
    def test_exact_indicator_match(self):
        g = sample_function(indicator01, -2.0, 0.25, 16)
        rep = compare_to_dyadic(g, indicator_unit(0))
        assert rep.max_abs_err == 0.0 and rep.l2_err == 0.0

    def test_shifted_input_metric(self):
        g = sample_function(lambda x: 3.0 * indicator01(x - 1.0), -2.0, 0.25, 16)
        rep = compare_to_dyadic(g, DyadicWave(0, 0, [3.0]))
        assert rep.max_abs_err == 3.0

    def test_coarse_grid_rejected(self):
        g = sample_function(indicator01, -2.0, 0.5, 8)
        with pytest.raises(DomainError):
            compare_to_dyadic(g, indicator_unit(2))
