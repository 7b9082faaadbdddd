"""Cycle-condition functionals for 4-, 6- and 8-cycle types.

For a 2k-cycle of type (a_1..a_k; x_1..x_k) the functional is

    f(a_1,x_1) - f(a_2,x_1) + f(a_2,x_2) - ... + f(a_k,x_k) - f(a_1,x_k)

and a cycle of that type exists exactly when it vanishes for both defining
functions (with distinct first coordinates for k <= 3).
"""

import math
from typing import Callable, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field

from src.errors import DeltaRangeError

Number = Union[float, complex]


class MonomialFn(BaseModel):
    """f(X, Y) = X^i_exp * Y^j_exp."""

    model_config = ConfigDict(frozen=True)

    i_exp: int = Field(ge=1)
    j_exp: int = Field(ge=1)

    def __call__(self, x: Number, y: Number) -> Number:
        return _power(x, self.i_exp) * _power(y, self.j_exp)

    def __str__(self) -> str:
        return f"X^{self.i_exp}Y^{self.j_exp}"


BivariateFn = Union[MonomialFn, Callable[[float, float], float]]


def _power(base: Number, exponent: int) -> Number:
    try:
        return base**exponent
    except OverflowError as e:
        raise DeltaRangeError(f"{base}^{exponent} overflows") from e


def _finite(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise DeltaRangeError(f"{what} is not finite ({value})")
    return value


def _cycle_terms(
    f: BivariateFn, a_coords: Sequence[float], x_coords: Sequence[float]
) -> list[float]:
    k = len(a_coords)
    if isinstance(f, MonomialFn):
        a_pow = [_power(a, f.i_exp) for a in a_coords]
        return [
            _power(x_coords[r], f.j_exp) * (a_pow[r] - a_pow[(r + 1) % k])
            for r in range(k)
        ]

    terms = []
    for r in range(k):
        terms.append(f(a_coords[r], x_coords[r]))
        terms.append(-f(a_coords[(r + 1) % k], x_coords[r]))
    return terms


def delta_cycle(
    f: BivariateFn, a_coords: Sequence[float], x_coords: Sequence[float]
) -> float:
    """Evaluate the 2k-cycle functional for k in {2, 3, 4}."""
    if len(a_coords) != len(x_coords) or len(a_coords) not in (2, 3, 4):
        raise ValueError("cycle types must have matching lengths k in {2, 3, 4}")
    terms = _cycle_terms(f, a_coords, x_coords)
    return _finite(math.fsum(terms), f"Delta_{len(a_coords)}")


def delta2(f: BivariateFn, a: float, b: float, x: float, y: float) -> float:
    if isinstance(f, MonomialFn):
        value = (_power(a, f.i_exp) - _power(b, f.i_exp)) * (
            _power(x, f.j_exp) - _power(y, f.j_exp)
        )
        return _finite(value, "Delta_2")
    return delta_cycle(f, (a, b), (x, y))


def delta3(
    f: BivariateFn, a: float, b: float, c: float, x: float, y: float, z: float
) -> float:
    return delta_cycle(f, (a, b, c), (x, y, z))


def delta4(
    f: BivariateFn, a_coords: Sequence[float], x_coords: Sequence[float]
) -> float:
    if len(a_coords) != 4:
        raise ValueError("Delta_4 needs four point and four line coordinates")
    return delta_cycle(f, a_coords, x_coords)


def delta2_complex(
    f: MonomialFn, a: complex, b: complex, x: complex, y: complex
) -> complex:
    value = (_power(a, f.i_exp) - _power(b, f.i_exp)) * (
        _power(x, f.j_exp) - _power(y, f.j_exp)
    )
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DeltaRangeError(f"complex Delta_2 is not finite ({value})")
    return complex(value)


def has_real_4cycle_obstruction(f: MonomialFn) -> bool:
    """Both exponents odd: (a^i - b^i)(x^j - y^j) = 0 forces a = b or x = y."""
    return f.i_exp % 2 == 1 and f.j_exp % 2 == 1
