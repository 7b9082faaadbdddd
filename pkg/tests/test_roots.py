import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import (
    BracketNotFoundError,
    DeltaRangeError,
    DomainError,
    NoSignChangeError,
    NonFiniteEvaluationError,
    PreconditionError,
)
from src.roots import (
    d_prop4,
    d_prop5,
    d_prop6,
    expand_bracket,
    find_bracketed_root,
    scaled_signed_pow,
    side_constant,
    signed_pow,
    spurious_point_check,
)

odd_roots = st.sampled_from([1, 3, 5, 7, 9])
bases = st.floats(min_value=-50, max_value=50, allow_nan=False).filter(
    lambda a: abs(a) > 1e-3
)


class TestSignedPow:
    def test_examples(self) -> None:
        assert signed_pow(-8, 1, 3) == pytest.approx(-2.0, rel=1e-15)
        assert signed_pow(-17, 2, 3) == pytest.approx(6.6114890, rel=1e-7)
        assert signed_pow(1, 7, 3) == 1.0

    def test_zero_base(self) -> None:
        assert signed_pow(0.0, 0, 3) == 1.0
        assert signed_pow(0.0, 2, 3) == 0.0
        with pytest.raises(DomainError):
            signed_pow(0.0, -1, 3)

    @pytest.mark.parametrize("q", [0, 2, -3])
    def test_root_index_must_be_odd_positive(self, q: int) -> None:
        with pytest.raises(DomainError):
            signed_pow(2.0, 1, q)

    @given(bases, st.integers(min_value=1, max_value=6), odd_roots)
    def test_magnitude_and_sign(self, a: float, p: int, q: int) -> None:
        value = signed_pow(a, p, q)
        assert abs(value) ** q == pytest.approx(abs(a) ** p, rel=1e-9)
        expected_sign = -1 if a < 0 and p % 2 else 1
        assert math.copysign(1, value) == expected_sign

    @given(bases, odd_roots)
    def test_root_then_power(self, a: float, q: int) -> None:
        assert signed_pow(signed_pow(a, 1, q), q, 1) == pytest.approx(a, rel=1e-9)


class TestScaledSignedPow:
    def test_matches_direct_product_in_range(self) -> None:
        assert scaled_signed_pow(4.0, -2.0, 12, 3) == 4.0 * signed_pow(-2.0, 12, 3)

    def test_recombines_overflowing_products(self) -> None:
        # (1e30)^12 overflows on its own; the product does not
        value = scaled_signed_pow(1e-100, -1e30, 12, 1)
        assert value == pytest.approx(1e260, rel=1e-9)


class TestScalarEquations:
    def test_prop4_anchor(self) -> None:
        for k in range(4):
            for n in range(1, k + 2):
                assert d_prop4(k, n)(0.0) == -2.0

    def test_prop4_value(self) -> None:
        eq = d_prop4(1, 1)
        assert eq(-2.0) == pytest.approx(7 - 17 ** (2 / 3), rel=1e-12)

    def test_prop5_values(self) -> None:
        eq = d_prop5(1, 0, 0, 1)
        assert eq(-1.0) == pytest.approx(-2.0)
        assert eq(-2.0) == pytest.approx(0.46875, rel=1e-12)
        with pytest.raises(DomainError):
            eq(0.0)

    def test_prop6_known_root(self) -> None:
        eq = d_prop6(0, 0, 1, 1)
        assert eq(-15.0) == 0.0
        assert eq.companion(-15.0) == pytest.approx(-3.0)

    def test_prop6_spurious_point(self) -> None:
        eq = d_prop6(0, 0, 1, 1)
        check = spurious_point_check(eq)
        assert check.passed
        assert check.value_at_one == 0.0
        assert check.slope_at_one == pytest.approx(check.expected_slope, rel=1e-4)
        assert check.side_constant == pytest.approx(1.75)

    def test_side_constant(self) -> None:
        assert side_constant(d_prop6(0, 1, 2, 2)) == pytest.approx(
            244 / 4 ** (4 / 3), rel=1e-12
        )
        assert side_constant(d_prop6(0, 0, 2, 2)) == pytest.approx(244 / 256)

    def test_spurious_check_only_for_prop6(self) -> None:
        with pytest.raises(PreconditionError):
            spurious_point_check(d_prop4(1, 1))

    def test_non_finite_values_raise(self) -> None:
        eq = d_prop4(0, 1)
        with pytest.raises(DeltaRangeError):
            eq(1e200)
        with pytest.raises(NonFiniteEvaluationError):
            eq(math.inf)


class TestExpandBracket:
    def test_prop4_bracket(self) -> None:
        lo, hi = expand_bracket(d_prop4(1, 1), 0.0, -1)
        assert (lo, hi) == (-2.0, -1.0)

    def test_polynomial(self) -> None:
        lo, hi = expand_bracket(lambda x: x * x - 4, 0.0, 1)
        assert lo < 2 <= hi

    def test_prop5_bracket(self) -> None:
        lo, hi = expand_bracket(d_prop5(1, 0, 0, 1), -1.0, -1)
        assert (lo, hi) == (-2.0, -1.0)

    def test_root_at_start(self) -> None:
        assert expand_bracket(lambda x: x, 0.0, 1) == (0.0, 0.0)

    def test_direction_must_be_unit(self) -> None:
        with pytest.raises(PreconditionError):
            expand_bracket(lambda x: x, 1.0, 2)

    def test_exhaustion(self) -> None:
        with pytest.raises(BracketNotFoundError):
            expand_bracket(lambda x: 1.0 + x * x, 0.0, 1, max_doublings=20)

    def test_overflow_ends_the_search(self) -> None:
        with pytest.raises(BracketNotFoundError):
            expand_bracket(lambda x: math.exp(x), 0.0, 1)


class TestFindBracketedRoot:
    def test_linear(self) -> None:
        assert find_bracketed_root(lambda x: x, -1.0, 1.0) == 0.0

    def test_prop4_root(self) -> None:
        eq = d_prop4(1, 1)
        root = find_bracketed_root(eq, -2.0, 0.0)
        assert -2.0 < root < 0.0
        assert abs(eq(root)) <= 1e-12 * 2.0
        spread = 10 * 1e-12 * 2.0
        assert eq(root - spread) * eq(root + spread) < 0

    def test_prop5_root(self) -> None:
        eq = d_prop5(1, 0, 0, 1)
        root = find_bracketed_root(eq, -2.0, -1.0)
        assert -2.0 < root < -1.0
        assert abs(eq(root)) <= 1e-12 * 2.0

    def test_swapped_endpoints(self) -> None:
        assert find_bracketed_root(lambda x: x - 0.5, 1.0, 0.0) == pytest.approx(0.5)

    def test_no_sign_change(self) -> None:
        with pytest.raises(NoSignChangeError):
            find_bracketed_root(lambda x: x * x + 1, -1.0, 1.0)

    def test_deterministic(self) -> None:
        eq = d_prop6(0, 0, 1, 1)
        lo, hi = expand_bracket(eq, 1.0 - 1e-3, -1)
        assert find_bracketed_root(eq, lo, hi) == find_bracketed_root(eq, lo, hi)
