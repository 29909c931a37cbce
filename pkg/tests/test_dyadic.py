"""Exact dyadic wave representation: canonical form and operator algebra."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvhistory.dyadic import (
    DyadicWave,
    aligned_pair,
    indicator_unit,
    inner,
    max_abs_diff,
    norm2,
    project,
    refine,
    samples,
    squeeze,
    translate_int,
    value_at,
)
from cvhistory.errors import DomainError, ResourceLimitError, ValidationError

SQRT2 = np.sqrt(2.0)

# Exact dyadic-rational coefficients so algebraic identities hold bit-for-bit.
coeff_values = st.sampled_from([-1.0, -0.5, 0.0, 0.5, 1.0, 2.0])
coeffs_strategy = st.lists(
    st.builds(complex, coeff_values, coeff_values), min_size=1, max_size=12
)
waves_strategy = st.builds(
    DyadicWave,
    st.integers(min_value=0, max_value=4),
    st.integers(min_value=-8, max_value=8),
    coeffs_strategy.map(np.array),
)


class TestCanonicalForm:
    def test_boundary_zeros_trimmed(self):
        a = DyadicWave(0, 5, [0, 2.0, 0])
        b = DyadicWave(0, 6, [2.0])
        assert a == b
        assert a.offset == 6 and a.n_cells == 1

    def test_zero_wave_pinned_at_origin(self):
        assert DyadicWave(2, 7, [0, 0]) == DyadicWave(2, 0, [0.0])

    def test_interior_zeros_kept(self):
        w = DyadicWave(1, 0, [1.0, 0.0, 1.0])
        assert w.n_cells == 3

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            DyadicWave(-1, 0, [1.0])
        with pytest.raises(ValidationError):
            DyadicWave(0, 0, [])
        with pytest.raises(ValidationError):
            DyadicWave(0, 0, [np.inf])


class TestIndicatorUnit:
    def test_level0(self):
        assert indicator_unit(0) == DyadicWave(0, 0, [1.0])

    def test_level1(self):
        w = indicator_unit(1)
        assert w == DyadicWave(1, 0, [1.0, 1.0])
        assert norm2(w) == pytest.approx(1.0, abs=0)

    def test_level2_four_cells(self):
        w = indicator_unit(2)
        assert w.n_cells == 4 and w.offset == 0 and np.all(w.coeffs == 1)

    @pytest.mark.parametrize("level", [0, 1, 3, 6])
    def test_norm_one_all_levels(self, level):
        assert norm2(indicator_unit(level)) == 1.0


class TestRefine:
    def test_level0_to_1(self):
        assert refine(indicator_unit(0), 1) == DyadicWave(1, 0, [1.0, 1.0])

    def test_same_level_identity(self):
        w = DyadicWave(2, 3, [1.0, 2.0])
        assert refine(w, 2) == w

    def test_offset_scaling(self):
        w = DyadicWave(1, 1, [0.25 + 0.5j])
        assert refine(w, 2) == DyadicWave(2, 2, [0.25 + 0.5j, 0.25 + 0.5j])

    def test_coarsening_refused(self):
        with pytest.raises(DomainError):
            refine(indicator_unit(2), 1)

    def test_cell_limit(self):
        with pytest.raises(ResourceLimitError):
            refine(indicator_unit(0), 23, max_cells=1 << 22)

    @given(waves_strategy, st.integers(min_value=0, max_value=3))
    @settings(max_examples=50, deadline=None)
    def test_pointwise_identical_and_norm_exact(self, w, dl):
        r = refine(w, w.level + dl)
        assert norm2(r) == norm2(w)
        assert max_abs_diff(r, w) == 0.0


class TestTranslateInt:
    def test_identity(self):
        w = DyadicWave(1, 3, [1.0, 2.0])
        assert translate_int(w, 0) == w

    def test_indicator_shift_right(self):
        assert translate_int(indicator_unit(0), 1) == DyadicWave(0, 1, [1.0])

    def test_shift_left_level1(self):
        w = DyadicWave(1, 0, [1.0, 2.0])
        assert translate_int(w, -1) == DyadicWave(1, -2, [1.0, 2.0])

    def test_non_integer_refused(self):
        with pytest.raises(DomainError):
            translate_int(indicator_unit(0), 0.5)

    @given(waves_strategy, st.integers(min_value=-5, max_value=5))
    @settings(max_examples=50, deadline=None)
    def test_inverse_pair_exact(self, w, t):
        assert translate_int(translate_int(w, t), -t) == w
        assert norm2(translate_int(w, t)) == norm2(w)


class TestProject:
    def test_fixes_own_range(self):
        w = indicator_unit(1)
        assert project(w, 0, 1) == w

    def test_drops_outside_cell(self):
        w = DyadicWave(0, 0, [3.0, 4.0])
        assert project(w, 0, 1) == DyadicWave(0, 0, [3.0])

    def test_empty_interval_refused(self):
        with pytest.raises(DomainError):
            project(indicator_unit(0), 1, 1)

    @given(waves_strategy, st.integers(-3, 2), st.integers(1, 4))
    @settings(max_examples=50, deadline=None)
    def test_idempotent_and_contractive(self, w, a, blen):
        b = a + blen
        once = project(w, a, b)
        assert project(once, a, b) == once
        assert norm2(once) <= norm2(w) + 1e-15


class TestSqueeze:
    def test_indicator(self):
        out = squeeze(indicator_unit(0))
        assert out.level == 1 and out.offset == 0
        assert np.allclose(out.coeffs, [SQRT2], atol=0)

    def test_two_cell_example(self):
        out = squeeze(DyadicWave(0, 0, [0.6, 0.8]))
        assert out == DyadicWave(1, 0, np.array([0.6, 0.8]) * SQRT2)

    def test_level_limit(self):
        with pytest.raises(ResourceLimitError):
            squeeze(indicator_unit(0), max_level=0)

    @given(waves_strategy)
    @settings(max_examples=50, deadline=None)
    def test_norm_preserved_and_support_halved(self, w):
        out = squeeze(w)
        assert norm2(out) == pytest.approx(norm2(w), rel=1e-15, abs=1e-18)
        assert out.support_measure() == 0.5 * w.support_measure()


class TestInnerAndNorm:
    def test_disjoint_supports(self):
        assert inner(indicator_unit(0), translate_int(indicator_unit(0), 1)) == 0

    def test_mixed_level_value(self):
        w = DyadicWave(1, 0, [SQRT2, 0.0])
        assert inner(w, indicator_unit(1)) == pytest.approx(1 / SQRT2, abs=1e-15)

    def test_conjugate_linear_first_argument(self):
        w1 = DyadicWave(0, 0, [1j])
        w2 = DyadicWave(0, 0, [1.0])
        assert inner(w1, w2) == pytest.approx(-1j)
        assert inner(w2, w1) == pytest.approx(1j)

    def test_norm2_formula(self):
        assert norm2(DyadicWave(2, 5, [3.0, 4.0])) == pytest.approx(25 / 4, abs=0)

    @given(waves_strategy)
    @settings(max_examples=50, deadline=None)
    def test_inner_self_is_norm2(self, w):
        assert inner(w, w) == pytest.approx(norm2(w), rel=1e-14, abs=1e-18)


class TestRefineCommutation:
    @given(waves_strategy, st.integers(min_value=1, max_value=3), st.integers(-3, 3))
    @settings(max_examples=50, deadline=None)
    def test_with_translate(self, w, dl, t):
        target = w.level + dl
        assert refine(translate_int(w, t), target) == translate_int(refine(w, target), t)

    @given(waves_strategy, st.integers(min_value=1, max_value=3))
    @settings(max_examples=50, deadline=None)
    def test_with_project(self, w, dl):
        target = w.level + dl
        assert refine(project(w, 0, 1), target) == project(refine(w, target), 0, 1)

    @given(waves_strategy, st.integers(min_value=1, max_value=3))
    @settings(max_examples=50, deadline=None)
    def test_with_squeeze(self, w, dl):
        target = w.level + dl
        assert refine(squeeze(w), target + 1) == squeeze(refine(w, target))


class TestSamplesAndValueAt:
    def test_indicator_two_points(self):
        assert samples(indicator_unit(0), 2) == [(0.0, 1 + 0j), (0.5, 1 + 0j)]

    def test_squeezed_indicator_single_point(self):
        pts = samples(squeeze(indicator_unit(0)), 1)
        assert len(pts) == 1
        assert pts[0][0] == 0.0 and pts[0][1].real == pytest.approx(SQRT2)

    def test_no_padding_outside_support(self):
        w = DyadicWave(0, 2, [0.0, 5.0, 0.0])
        assert samples(w, 1) == [(3.0, 5 + 0j)]

    def test_bad_pts_per_cell(self):
        with pytest.raises(DomainError):
            samples(indicator_unit(0), 0)

    def test_value_at_half_open(self):
        w = DyadicWave(1, 0, [1.0, 2.0])
        assert value_at(w, 0.0) == 1.0
        assert value_at(w, 0.5) == 2.0
        assert value_at(w, 1.0) == 0.0
        assert value_at(w, -0.001) == 0.0


class TestAlignedPair:
    def test_hull_and_padding(self):
        level, lo, c1, c2 = aligned_pair(indicator_unit(0), translate_int(indicator_unit(1), 1))
        assert level == 1 and lo == 0
        assert np.array_equal(c1, [1, 1, 0, 0])
        assert np.array_equal(c2, [0, 0, 1, 1])
