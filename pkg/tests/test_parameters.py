"""Tests for wboxdim.parameters."""

from __future__ import annotations

import math
from unittest import TestCase

from hypothesis import given, settings
from hypothesis import strategies as st

from wboxdim.errors import BaseTooSmall, ContractivityViolation, OutOfRange, ParameterError
from wboxdim.parameters import (
    Reading,
    box_dimension,
    cell_width,
    degenerate_j,
    eta_w,
    lower_bound_constants,
    new_params,
    scale_factor,
)


@st.composite
def admissible_params(draw):
    n_b = draw(st.integers(min_value=3, max_value=64))
    lam = draw(st.floats(min_value=1.0 / n_b + 1e-9, max_value=0.999))
    return new_params(lam, n_b)


class NewParamsTests(TestCase):
    def test_accepts_reference_pairs(self) -> None:
        self.assertEqual(3, new_params(0.5, 3).n_b)
        self.assertEqual(0.5, new_params(0.5, 4).lam)

    def test_rejects_contraction_below_one_over_base(self) -> None:
        with self.assertRaises(ContractivityViolation):
            new_params(0.2, 3)
        with self.assertRaises(ContractivityViolation):
            new_params(0.25, 4)

    def test_rejects_lambda_outside_unit_interval(self) -> None:
        for lam in (0.0, 1.0, -0.5, 1.5, float("nan"), float("inf")):
            with self.subTest(lam=lam):
                with self.assertRaises(OutOfRange):
                    new_params(lam, 3)

    def test_rejects_small_or_fractional_base(self) -> None:
        for n_b in (2, 1, 0, 3.5):
            with self.subTest(n_b=n_b):
                with self.assertRaises(BaseTooSmall):
                    new_params(0.9, n_b)

    def test_errors_share_parameter_error_base(self) -> None:
        with self.assertRaises(ParameterError) as caught:
            new_params(0.2, 3)
        self.assertEqual(2, caught.exception.exit_code)
        self.assertTrue(caught.exception.diagnostic().startswith("ContractivityViolation: "))


class DimensionTests(TestCase):
    def test_reference_dimensions(self) -> None:
        self.assertAlmostEqual(1.5, box_dimension(new_params(0.5, 4)).d_w, places=14)
        self.assertAlmostEqual(1.3690702, box_dimension(new_params(0.5, 3)).d_w, places=7)

    def test_dimension_near_one_at_contractivity_edge(self) -> None:
        p = new_params(1.001 / 3, 3)
        self.assertLess(abs(box_dimension(p).d_w - 1.0), 1e-3)

    @given(admissible_params())
    def test_dimension_in_open_interval_and_lambda_roundtrip(self, p) -> None:
        value = box_dimension(p)
        self.assertGreater(value.d_w, 1.0)
        self.assertLess(value.d_w, 2.0)
        self.assertAlmostEqual(p.lam, value.lambda_roundtrip(p.n_b), delta=1e-14)


class ConstantTests(TestCase):
    def test_eta_reference_values(self) -> None:
        self.assertAlmostEqual(2 * math.pi**2 * (20 / 7 + 6 / 43.75), eta_w(new_params(0.5, 3)), places=10)
        self.assertAlmostEqual(59.10, eta_w(new_params(0.5, 3)), places=1)
        self.assertAlmostEqual(2 * math.pi**2 * (5 / 3 + 8 / 217), eta_w(new_params(0.5, 4)), places=10)

    def test_eta_strictly_decreasing_in_base(self) -> None:
        values = [eta_w(new_params(0.5, n_b)) for n_b in range(3, 65)]
        for left, right in zip(values, values[1:]):
            self.assertGreater(left, right)

    def test_odd_lower_constant(self) -> None:
        constants = lower_bound_constants(new_params(0.5, 3))
        self.assertAlmostEqual(4 - 2 * math.pi / 3, constants.lower_odd, places=12)
        self.assertAlmostEqual(1.9056, constants.effective_lower, places=4)
        self.assertEqual(constants.eta_w, constants.cover_c)

    def test_even_constants_under_both_readings(self) -> None:
        p = new_params(0.5, 4)
        printed = lower_bound_constants(p)
        self.assertEqual(0.015625, printed.lower_even_second)
        self.assertLess(printed.lower_even_all_j, 0.0)
        self.assertEqual(printed.lower_even_second, printed.effective_lower)
        self.assertTrue(printed.is_negative("lower_even_all_j"))

        relaxed = lower_bound_constants(p, Reading.NON_DEGENERATE)
        self.assertAlmostEqual(2.476, relaxed.lower_even_first, places=3)
        self.assertEqual(relaxed.lower_even_first, relaxed.effective_lower)

    def test_lower_constant_flagged_near_contractivity_edge(self) -> None:
        constants = lower_bound_constants(new_params(1.01 / 3, 3))
        self.assertTrue(constants.is_negative("lower_odd"))
        self.assertGreaterEqual(constants.cover_c, constants.eta_w)

    def test_degenerate_index(self) -> None:
        self.assertEqual(1, degenerate_j(new_params(0.5, 4)))
        self.assertIsNone(degenerate_j(new_params(0.5, 3)))
        self.assertEqual(2, degenerate_j(new_params(0.5, 6)))

    @settings(max_examples=60)
    @given(admissible_params())
    def test_sine_minima(self, p) -> None:
        constants = lower_bound_constants(p)
        floor = math.sin(math.pi / (p.n_b - 1))
        self.assertGreaterEqual(constants.min_sine_nondegenerate, floor - 1e-14)
        self.assertGreaterEqual(floor, 2.0 / (p.n_b - 1) - 1e-15)
        skip = degenerate_j(p)
        if skip is not None:
            self.assertLessEqual(abs(math.sin(math.pi * (2 * skip + 1) / (p.n_b - 1))), 1e-14)
        self.assertGreater(constants.eta_w, 0.0)
        self.assertGreater(constants.lower_even_second, 0.0)
        self.assertGreaterEqual(constants.cover_c, constants.eta_w)

    def test_scale_factor_is_lambda_power(self) -> None:
        for lam, n_b in ((0.5, 3), (0.4, 4), (0.7, 3)):
            p = new_params(lam, n_b)
            for m in range(0, 8):
                with self.subTest(lam=lam, n_b=n_b, m=m):
                    self.assertAlmostEqual(lam**m, scale_factor(p, m), delta=1e-12)
        self.assertAlmostEqual(1 / 6, cell_width(new_params(0.5, 3), 1), places=15)
