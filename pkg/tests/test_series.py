"""Tests for wboxdim.series."""

from __future__ import annotations

import math
from fractions import Fraction
from unittest import TestCase

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from wboxdim.errors import InvalidInput, ToleranceTooSmall
from wboxdim.parameters import eta_w, new_params
from wboxdim.series import (
    FunctionGraph,
    WeierstrassGraph,
    eval_w,
    oscillation,
    series_at,
    series_at_rationals,
    truncation_for,
)
from wboxdim.settings import Settings


class TruncationTests(TestCase):
    def test_reference_depths(self) -> None:
        self.assertEqual(40, truncation_for(new_params(0.5, 3), 1e-12).k_terms)
        self.assertEqual(0, truncation_for(new_params(0.5, 3), 1.0).k_terms)
        self.assertEqual(152, truncation_for(new_params(0.9, 3), 1e-6).k_terms)

    def test_tail_bound_within_tolerance(self) -> None:
        for lam, tol in ((0.5, 1e-12), (0.7, 1e-9), (0.9, 1e-6)):
            truncation = truncation_for(new_params(lam, 3), tol)
            with self.subTest(lam=lam, tol=tol):
                self.assertLessEqual(truncation.tail_bound, tol)
                self.assertGreater(truncation.phase_error_budget, 0.0)

    def test_rejects_non_positive_tolerance(self) -> None:
        for tol in (0.0, -1e-3, float("nan")):
            with self.subTest(tol=tol):
                with self.assertRaises(InvalidInput):
                    truncation_for(new_params(0.5, 3), tol)

    def test_cap_exceeded(self) -> None:
        with self.assertRaises(ToleranceTooSmall) as caught:
            truncation_for(new_params(0.999, 3), 1e-300)
        self.assertGreater(caught.exception.k_terms, caught.exception.cap)


class EvalTests(TestCase):
    def setUp(self) -> None:
        self.p = new_params(0.5, 3)

    def test_value_at_zero(self) -> None:
        self.assertAlmostEqual(2.0, eval_w(self.p, 0), delta=2e-12)

    def test_value_at_one_half(self) -> None:
        self.assertAlmostEqual(-2.0, eval_w(self.p, 0.5), delta=2e-12)
        self.assertAlmostEqual(-2.0, eval_w(self.p, Fraction(1, 2)), delta=2e-12)

    def test_fixed_point_ordinates(self) -> None:
        for p in (self.p, new_params(0.5, 4), new_params(0.7, 5)):
            for i in range(p.n_b):
                x = Fraction(i, p.n_b - 1)
                expected = math.cos(2 * math.pi * x) / (1 - p.lam)
                with self.subTest(lam=p.lam, n_b=p.n_b, i=i):
                    self.assertAlmostEqual(expected, eval_w(p, x), delta=1e-9)

    def test_truncation_consistency(self) -> None:
        x = Fraction(2, 7)
        self.assertAlmostEqual(eval_w(self.p, x, 1e-6), eval_w(self.p, x, 1e-12), delta=2e-6)

    def test_rejects_non_finite_abscissa(self) -> None:
        with self.assertRaises(InvalidInput):
            eval_w(self.p, float("nan"))

    @settings(max_examples=50)
    @given(st.integers(min_value=-(2**45), max_value=2**45), st.integers(min_value=-3, max_value=3))
    def test_period_one_at_dyadic_points(self, numerator, shift) -> None:
        x = numerator / 2**40
        self.assertAlmostEqual(eval_w(self.p, x), eval_w(self.p, x + shift), delta=2e-12)

    def test_vectorized_evaluators_agree_with_scalar(self) -> None:
        k_terms = truncation_for(self.p, 1e-12).k_terms
        numerators = np.arange(0, 97)
        exact = series_at_rationals(self.p, numerators, 96, k_terms)
        floats = series_at(self.p, numerators / 96.0, k_terms)
        for index in (0, 5, 32, 48, 77, 96):
            scalar = eval_w(self.p, Fraction(index, 96))
            with self.subTest(index=index):
                self.assertAlmostEqual(scalar, exact[index], delta=1e-12)
        dyadic = np.arange(0, 65) / 64.0
        for x, value in zip(dyadic, series_at(self.p, dyadic, k_terms)):
            self.assertAlmostEqual(eval_w(self.p, float(x)), value, delta=1e-12)
        self.assertEqual(floats.shape, exact.shape)

    def test_small_dyadic_fractions_stay_exact(self) -> None:
        k_terms = truncation_for(self.p, 1e-12).k_terms
        xs = np.array([2.0**-20, 3 * 2.0**-30, 5.0 + 2.0**-40])
        for x, value in zip(xs, series_at(self.p, xs, k_terms)):
            with self.subTest(x=float(x)):
                self.assertAlmostEqual(eval_w(self.p, float(x)), value, delta=1e-12)

    def test_rational_denominator_limit(self) -> None:
        with self.assertRaises(InvalidInput):
            series_at_rationals(self.p, np.arange(3), 2**62, 4)


class OscillationTests(TestCase):
    def setUp(self) -> None:
        self.p = new_params(0.5, 3)

    def test_full_period_oscillation_covers_extremes(self) -> None:
        estimate = oscillation(self.p, 0.0, 1.0, 1001, refine=False)
        self.assertGreaterEqual(estimate.osc, 4.0 - 1e-9)
        self.assertEqual(1001, estimate.samples_used)
        self.assertGreaterEqual(estimate.osc, 0.0)

    def test_nested_grids_are_monotone(self) -> None:
        inner = oscillation(self.p, 0.0, 0.25, 33, refine=False)
        outer = oscillation(self.p, 0.0, 0.5, 65, refine=False)
        self.assertLessEqual(inner.osc, outer.osc + 1e-12)

    def test_refinement_never_lowers_oscillation(self) -> None:
        coarse = oscillation(self.p, 0.1, 0.3, 9, refine=False)
        refined = oscillation(self.p, 0.1, 0.3, 9, settings=Settings(oscillation_cap=257))
        self.assertGreaterEqual(refined.osc, coarse.osc)
        self.assertLessEqual(refined.samples_used, 257)
        self.assertGreater(refined.samples_used, 9)

    def test_zero_variation_graph_is_certified_immediately(self) -> None:
        estimate = oscillation(self.p, 0.0, 1.0, 5, graph=FunctionGraph(lambda xs: xs))
        self.assertTrue(estimate.certified)
        self.assertEqual(5, estimate.samples_used)
        self.assertAlmostEqual(1.0, estimate.osc)

    def test_invalid_intervals(self) -> None:
        with self.assertRaises(InvalidInput):
            oscillation(self.p, 0.5, 0.5, 10)
        with self.assertRaises(InvalidInput):
            oscillation(self.p, 0.0, 1.0, 1)

    def test_weierstrass_graph_bound_matches_scale_law(self) -> None:
        graph = WeierstrassGraph(self.p)
        spacing = 1.0 / 6.0
        # at the level-1 cell width the bound is eta * lambda
        self.assertAlmostEqual(graph.variation_bound(spacing), eta_w(self.p) * 0.5, places=12)
