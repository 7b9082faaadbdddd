"""Signed rational powers, bracket expansion and bisection for the 6-cycle equations."""

import math
from typing import Callable, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from src.config import MAX_DOUBLINGS, ROOT_TOL
from src.errors import (
    BracketNotFoundError,
    DeltaRangeError,
    DomainError,
    NoSignChangeError,
    NonFiniteEvaluationError,
    PreconditionError,
)
from src.logger import get_logger

logger = get_logger("roots")

LOG_DOMAIN_EXPONENT = 10
MAX_BISECTIONS = 2000
_MAX_LOG = math.log(1.7976931348623157e308)

EquationLabel = Literal["D_prop4", "D_prop5", "D_prop6"]


def signed_pow(a: float, p: int, q: int) -> float:
    """Real a^(p/q) for odd q, taking (-|a|)^(p/q) = (-1)^p |a|^(p/q)."""
    if q < 1 or q % 2 == 0:
        raise DomainError(f"root index must be odd and positive, got {q}")
    if a == 0:
        if p < 0:
            raise DomainError(f"0^({p}/{q}) is undefined")
        return 1.0 if p == 0 else 0.0

    try:
        magnitude = float(abs(a)) ** p if q == 1 else math.pow(abs(a), p / q)
    except OverflowError as e:
        raise DeltaRangeError(f"|{a}|^({p}/{q}) overflows") from e
    return -magnitude if a < 0 and p % 2 else magnitude


def scaled_signed_pow(coef: float, a: float, p: int, q: int) -> float:
    """coef * signed_pow(a, p, q); for p > 10 an overflowing product is
    recombined in the log domain."""
    if p <= LOG_DOMAIN_EXPONENT or coef == 0 or a == 0:
        return coef * signed_pow(a, p, q)
    try:
        direct = coef * signed_pow(a, p, q)
    except DeltaRangeError:
        direct = math.inf
    if math.isfinite(direct):
        return direct

    sign = math.copysign(1.0, coef)
    if a < 0 and p % 2:
        sign = -sign
    log_magnitude = math.log(abs(coef)) + (p / q) * math.log(abs(a))
    if log_magnitude > _MAX_LOG:
        raise DeltaRangeError(f"{coef} * |{a}|^({p}/{q}) overflows")
    return sign * math.exp(log_magnitude)


def _ipow(base: float, exponent: int) -> float:
    try:
        return float(base) ** exponent
    except OverflowError as e:
        raise DeltaRangeError(f"{base}^{exponent} overflows") from e


class ScalarEquation(BaseModel):
    """The D function of one 6-cycle construction, with its companion root z(.)."""

    model_config = ConfigDict(frozen=True)

    label: EquationLabel
    j: int = Field(ge=0)
    k: int = Field(ge=0)
    m: int = Field(ge=0)
    n: int = Field(ge=1)

    @property
    def odd_y(self) -> int:
        return 2 * self.k + 1

    @property
    def even_y(self) -> int:
        return 2 * self.n

    def __call__(self, x: float) -> float:
        if self.label == "D_prop4":
            value = self._d_prop4(x)
        elif self.label == "D_prop5":
            value = self._d_prop5(x)
        else:
            value = self._d_prop6(x)
        if not math.isfinite(value):
            raise NonFiniteEvaluationError(f"{self.label}({x}) = {value}")
        return value

    def companion(self, x: float) -> float:
        """The last line coordinate z that closes the f2 equation at x."""
        return signed_pow(self._inner(x), 1, self.odd_y)

    def _inner(self, x: float) -> float:
        if self.label == "D_prop4":
            return 2 * _ipow(x, self.odd_y) - 1
        if self.label == "D_prop5":
            if x == 0:
                raise DomainError("D_prop5 is undefined at c = 0")
            cj = _ipow(x, 2 * self.j + 1)
            return (cj - 1) / cj
        three_j = 3.0 ** (2 * self.j + 1)
        return (_ipow(x, self.odd_y) + three_j) / (three_j + 1)

    def _d_prop4(self, y: float) -> float:
        return (
            -1
            + 2 * _ipow(y, self.even_y)
            - signed_pow(self._inner(y), self.even_y, self.odd_y)
        )

    def _d_prop5(self, c: float) -> float:
        cm = _ipow(c, 2 * self.m + 1)
        return 1 - cm + scaled_signed_pow(cm, self._inner(c), self.even_y, self.odd_y)

    def _d_prop6(self, x: float) -> float:
        three_m = 3.0 ** (2 * self.m + 1)
        return (
            _ipow(x, self.even_y)
            + three_m
            - scaled_signed_pow(three_m + 1, self._inner(x), self.even_y, self.odd_y)
        )


def d_prop4(k: int, n: int, j: int = 0, m: int = 0) -> ScalarEquation:
    return ScalarEquation(label="D_prop4", j=j, k=k, m=m, n=n)


def d_prop5(j: int, k: int, m: int, n: int) -> ScalarEquation:
    return ScalarEquation(label="D_prop5", j=j, k=k, m=m, n=n)


def d_prop6(j: int, k: int, m: int, n: int) -> ScalarEquation:
    return ScalarEquation(label="D_prop6", j=j, k=k, m=m, n=n)


Equation = Union[ScalarEquation, Callable[[float], float]]


def _evaluate(eq: Equation, x: float) -> float:
    value = eq(x)
    if not math.isfinite(value):
        raise NonFiniteEvaluationError(f"equation is not finite at {x} ({value})")
    return value


def _sign(value: float) -> int:
    return (value > 0) - (value < 0)


def expand_bracket(
    eq: Equation,
    start: float,
    direction: int,
    max_doublings: int = MAX_DOUBLINGS,
) -> Tuple[float, float]:
    """Step away from ``start`` with steps 1, 2, 4, ... until eq changes sign."""
    if direction not in (-1, 1):
        raise PreconditionError(f"direction must be +1 or -1, got {direction}")

    start_value = _evaluate(eq, start)
    if start_value == 0:
        return (start, start)
    start_sign = _sign(start_value)

    previous = start
    for doubling in range(max_doublings):
        current = start + direction * math.ldexp(1.0, doubling)
        try:
            value = _evaluate(eq, current)
        except (DeltaRangeError, NonFiniteEvaluationError, OverflowError) as e:
            raise BracketNotFoundError(
                f"evaluation left the float range at {current} before a sign change"
            ) from e
        if _sign(value) != start_sign:
            lo, hi = sorted((previous, current))
            logger.debug(f"Bracket [{lo}, {hi}] after {doubling + 1} steps")
            return (lo, hi)
        previous = current

    raise BracketNotFoundError(
        f"no sign change within {max_doublings} doublings from {start}"
    )


def find_bracketed_root(
    eq: Equation, lo: float, hi: float, tol: float = ROOT_TOL
) -> float:
    """Bisect [lo, hi] down to adjacent floats and return the better endpoint."""
    if lo > hi:
        lo, hi = hi, lo
    f_lo = _evaluate(eq, lo)
    f_hi = _evaluate(eq, hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if _sign(f_lo) == _sign(f_hi):
        raise NoSignChangeError(
            f"no sign change on [{lo}, {hi}] (values {f_lo}, {f_hi})"
        )

    scale = max(1.0, abs(f_lo), abs(f_hi))
    for _ in range(MAX_BISECTIONS):
        mid = lo + (hi - lo) / 2
        if mid <= lo or mid >= hi:
            break
        f_mid = _evaluate(eq, mid)
        if f_mid == 0:
            return mid
        if _sign(f_mid) == _sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    root, residual = (lo, f_lo) if abs(f_lo) <= abs(f_hi) else (hi, f_hi)
    if abs(residual) > tol * scale:
        logger.warning(
            f"Bisection stopped at {root} with |f| = {abs(residual):.3e} "
            f"above {tol:.1e} x {scale:.3e}"
        )
    return root


class SpuriousPointCheck(BaseModel):
    value_at_one: float
    slope_at_one: float
    expected_slope: float
    side_constant: float

    @property
    def passed(self) -> bool:
        return abs(self.value_at_one) <= 1e-12 and self.slope_at_one < 0


def side_constant(eq: ScalarEquation) -> float:
    """C = (3^(2m+1)+1) / (3^(2j+1)+1)^(2n/(2k+1)); C > 1 puts the root below 1."""
    numerator = 3.0 ** (2 * eq.m + 1) + 1
    denominator = math.pow(3.0 ** (2 * eq.j + 1) + 1, eq.even_y / eq.odd_y)
    return numerator / denominator


def spurious_point_check(eq: ScalarEquation, h: float = 1e-6) -> SpuriousPointCheck:
    """D(1) = 0 and D'(1) < 0 for the D_prop6 equation."""
    if eq.label != "D_prop6":
        raise PreconditionError(f"spurious point check applies to D_prop6, not {eq.label}")
    ratio = (3.0 ** (2 * eq.m + 1) + 1) / (3.0 ** (2 * eq.j + 1) + 1)
    return SpuriousPointCheck(
        value_at_one=eq(1.0),
        slope_at_one=(eq(1.0 + h) - eq(1.0 - h)) / (2 * h),
        expected_slope=eq.even_y * (1 - ratio),
        side_constant=side_constant(eq),
    )
