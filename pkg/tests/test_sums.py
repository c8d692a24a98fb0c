"""Core sum evaluator: frozen examples plus property tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavefactor.sums import (
    FOURIER,
    GAUSS,
    KUMMER,
    SELF_EXPONENTIAL,
    SumKind,
    SumSpec,
    SumValue,
    TermSelection,
    evaluate_sum,
    evaluate_sum_float,
    parse_kind,
    phase_fraction,
    power_kind,
    sum_magnitudes,
)

from oracles import oracle_sum

KINDS = [FOURIER, GAUSS, KUMMER, power_kind(5), SELF_EXPONENTIAL]
SELECTIONS = [TermSelection.ALL, TermSelection.ODD_ONLY]

kind_st = st.sampled_from(KINDS)
selection_st = st.sampled_from(SELECTIONS)


class TestPhaseFraction:
    def test_divisor_multiple(self):
        # 4 * 15 = 60 = 0 mod 4
        assert phase_fraction(2, 2, 15, 4) == 0.0

    def test_kummer_example(self):
        # 27 * 7 = 189 = 4 mod 5
        assert phase_fraction(3, 3, 7, 5) == 0.8

    def test_self_exponential_at_three(self):
        # 27 * 10 = 270 = 4 mod 7
        assert phase_fraction(3, 3, 10, 7) == pytest.approx(4 / 7, abs=0)

    def test_trial_zero_rejected(self):
        with pytest.raises(ValueError):
            phase_fraction(1, 1, 10, 0)

    @given(
        m=st.integers(1, 10**6),
        k=st.integers(1, 50),
        n=st.integers(1, 10**12),
        l=st.integers(1, 10**6),
    )
    def test_matches_bigint_arithmetic(self, m, k, n, l):
        assert phase_fraction(m, k, n, l) == (m**k * n % l) / l

    @given(m=st.integers(1, 1000), k=st.integers(1, 8), n=st.integers(1, 10**9), l=st.integers(1, 10**4))
    def test_range(self, m, k, n, l):
        f = phase_fraction(m, k, n, l)
        assert 0.0 <= f < 1.0


class TestEvaluateSum:
    def test_divisor_gives_exact_unity(self):
        v = evaluate_sum(SumSpec(15, 4, GAUSS), 3)
        assert v.value == 1 + 0j
        assert v.magnitude == 1.0
        assert v.terms_used == 4

    def test_two_term_cancellation(self):
        v = evaluate_sum(SumSpec(15, 2, FOURIER), 2)
        assert v.magnitude <= 1e-12

    def test_quadratic_plateau_at_four(self):
        # terms -i, 1, -i, 1
        expected = abs(oracle_sum(21, 4, 2, 4))
        assert expected == pytest.approx(1 / math.sqrt(2), abs=1e-15)
        v = evaluate_sum(SumSpec(21, 4, GAUSS), 4)
        assert v.magnitude == pytest.approx(expected, abs=1e-12)
        assert v.value == pytest.approx(0.5 - 0.5j, abs=1e-12)

    def test_odd_only_divisor_unity(self):
        for kind in KINDS:
            v = evaluate_sum(SumSpec(270, 7, kind, TermSelection.ODD_ONLY), 6)
            assert v.magnitude == 1.0
            assert v.terms_used == 4  # m in {1, 3, 5, 7}

    def test_trial_one_is_trivially_unity(self):
        assert evaluate_sum(SumSpec(17, 5, GAUSS), 1).magnitude == 1.0

    def test_trial_zero_rejected(self):
        with pytest.raises(ValueError):
            evaluate_sum(SumSpec(15, 4, GAUSS), 0)

    def test_bad_spec_rejected(self):
        with pytest.raises(ValueError):
            SumSpec(1, 4, GAUSS)
        with pytest.raises(ValueError):
            SumSpec(10, 0, GAUSS)
        with pytest.raises(ValueError):
            power_kind(0)

    @given(
        q=st.integers(1, 400),
        l=st.integers(1, 400),
        truncation=st.integers(1, 40),
        kind=kind_st,
        selection=selection_st,
    )
    @settings(max_examples=150)
    def test_divisor_unity_property(self, q, l, truncation, kind, selection):
        number = q * l
        if number < 2:
            number, l = 2 * l, l
        v = evaluate_sum(SumSpec(number, truncation, kind, selection), l)
        assert abs(v.magnitude - 1.0) <= 1e-12

    @given(
        number=st.integers(2, 10**9),
        l=st.integers(1, 10**4),
        truncation=st.integers(1, 60),
        kind=kind_st,
        selection=selection_st,
    )
    @settings(max_examples=150)
    def test_bounded_property(self, number, l, truncation, kind, selection):
        v = evaluate_sum(SumSpec(number, truncation, kind, selection), l)
        assert v.magnitude <= 1.0 + 1e-12
        assert abs(v.magnitude - abs(v.value)) <= 1e-12

    @given(
        number=st.integers(2, 10**6),
        l=st.integers(1, 10**3),
        j=st.integers(0, 10**3),
        truncation=st.integers(1, 32),
        kind=kind_st,
        selection=selection_st,
    )
    @settings(max_examples=150)
    def test_periodicity_in_number(self, number, l, j, truncation, kind, selection):
        a = evaluate_sum(SumSpec(number, truncation, kind, selection), l)
        b = evaluate_sum(SumSpec(number + j * l, truncation, kind, selection), l)
        assert abs(a.value.real - b.value.real) <= 1e-12
        assert abs(a.value.imag - b.value.imag) <= 1e-12

    @given(
        number=st.integers(2, 10**6),
        l=st.integers(1, 500),
        truncation=st.integers(1, 24),
        k=st.sampled_from([1, 2, 3]),
        selection=selection_st,
    )
    @settings(max_examples=100)
    def test_alias_consistency(self, number, l, truncation, k, selection):
        named = {1: FOURIER, 2: GAUSS, 3: KUMMER}[k]
        a = evaluate_sum(SumSpec(number, truncation, named, selection), l)
        b = evaluate_sum(SumSpec(number, truncation, power_kind(k), selection), l)
        assert a.value == b.value
        assert a.magnitude == b.magnitude

    @given(
        number=st.integers(2, 10**6),
        l=st.integers(1, 500),
        truncation=st.integers(1, 24),
        kind=kind_st,
        selection=selection_st,
    )
    @settings(max_examples=100)
    def test_matches_direct_summation_oracle(self, number, l, truncation, kind, selection):
        v = evaluate_sum(SumSpec(number, truncation, kind, selection), l)
        expected = oracle_sum(
            number,
            truncation,
            kind.power or 1,
            l,
            odd_only=selection is TermSelection.ODD_ONLY,
            self_exp=kind.power is None,
        )
        assert v.value == pytest.approx(expected, abs=1e-12)


class TestEvaluateSumFloat:
    def test_small_divisor(self):
        v = evaluate_sum_float(SumSpec(15, 4, GAUSS), 3)
        assert v.magnitude == pytest.approx(1.0, abs=1e-9)

    def test_small_plateau(self):
        v = evaluate_sum_float(SumSpec(21, 4, GAUSS), 4)
        assert v.magnitude == pytest.approx(1 / math.sqrt(2), abs=1e-9)

    def test_overflow_signals_range_error(self):
        with pytest.raises(OverflowError):
            evaluate_sum_float(SumSpec(10**15, 40, KUMMER), 7)

    @given(
        number=st.integers(2, 5000),
        l=st.integers(1, 70),
        truncation=st.integers(1, 8),
        kind=st.sampled_from([FOURIER, GAUSS]),
        selection=selection_st,
    )
    @settings(max_examples=150)
    def test_agrees_with_exact_path_at_desk_scale(self, number, l, truncation, kind, selection):
        exact = evaluate_sum(SumSpec(number, truncation, kind, selection), l)
        approx = evaluate_sum_float(SumSpec(number, truncation, kind, selection), l)
        assert abs(exact.value.real - approx.value.real) <= 1e-9
        assert abs(exact.value.imag - approx.value.imag) <= 1e-9


class TestSumMagnitudesBatch:
    @given(
        number=st.integers(2, 10**7),
        lo=st.integers(1, 400),
        width=st.integers(0, 200),
        truncation=st.integers(1, 40),
        kind=kind_st,
        selection=selection_st,
    )
    @settings(max_examples=60, deadline=None)
    def test_matches_scalar_path(self, number, lo, width, truncation, kind, selection):
        ls = np.arange(lo, lo + width + 1, dtype=np.int64)
        mags = sum_magnitudes(number, ls, truncation, kind, selection)
        for i in (0, len(ls) // 2, len(ls) - 1):
            scalar = evaluate_sum(
                SumSpec(number, truncation, kind, selection), int(ls[i])
            ).magnitude
            assert abs(mags[i] - scalar) <= 1e-12

    def test_parallel_chunking_is_bit_identical(self):
        ls = np.arange(2, 3000, dtype=np.int64)
        a = sum_magnitudes(999999, ls, 32, GAUSS, parallel=1)
        b = sum_magnitudes(999999, ls, 32, GAUSS, parallel=8)
        assert np.array_equal(a, b)

    def test_large_trials_use_exact_fallback(self):
        # beyond the int64-safe modulus window
        ls = np.array([3_100_000_017], dtype=np.int64)
        mags = sum_magnitudes(9_300_000_051, ls, 5, FOURIER)
        scalar = evaluate_sum(SumSpec(9_300_000_051, 5, FOURIER), 3_100_000_017)
        assert mags[0] == scalar.magnitude

    def test_empty_input(self):
        assert sum_magnitudes(10, np.empty(0, dtype=np.int64), 4).size == 0

    def test_zero_trial_rejected(self):
        with pytest.raises(ValueError):
            sum_magnitudes(10, np.array([0]), 4)


class TestKindParsing:
    def test_named(self):
        assert parse_kind("gauss") is GAUSS
        assert parse_kind("selfexp") is SELF_EXPONENTIAL

    def test_power(self):
        assert parse_kind("powerk:5") == power_kind(5)
        assert str(power_kind(5)) == "powerk:5"

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_kind("cosine")
        with pytest.raises(ValueError):
            parse_kind("powerk:x")


class TestSumValueInvariants:
    def test_rejects_inconsistent_magnitude(self):
        with pytest.raises(ValueError):
            SumValue(value=1 + 0j, magnitude=0.5, terms_used=1)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            SumValue(value=complex("inf"), magnitude=1.0, terms_used=1)

    def test_rejects_magnitude_above_one(self):
        with pytest.raises(ValueError):
            SumValue(value=2 + 0j, magnitude=2.0, terms_used=1)
