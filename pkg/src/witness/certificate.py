"""Sampled evidence that Gamma(XY^(2k+1), XY^(2n)) has no 6-cycle.

A 6-cycle would make the homogeneous system with matrix A singular, which
happens only if h_x(t) = (t^(2n) - x^(2n)) / (t^(2k+1) - x^(2k+1)) takes one
value twice. h_x is strictly increasing because its derivative has the sign
of H_x(t), which is positive away from t = x.
"""

from typing import Optional, Union

import numpy as np

from src.classify import classify
from src.config import DEFAULT_SEED
from src.core import Girth8Certificate, MonomialPair, SampleTally
from src.errors import PreconditionError
from src.logger import get_logger

logger = get_logger("witness.certificate")

ArrayLike = Union[float, np.ndarray]

GRID_POINTS = 100
GRID_STEP = 0.2
SAMPLE_RANGE = 10.0
MONOTONE_GAP = 1e-6
POSITIVE_GAP = 1e-3
CRITICAL_TOL = 1e-9
DET_TOL = 1e-12


def h_x(t: ArrayLike, x: float, k: int, n: int) -> ArrayLike:
    return (t ** (2 * n) - x ** (2 * n)) / (t ** (2 * k + 1) - x ** (2 * k + 1))


def big_h_x(t: ArrayLike, x: float, k: int, n: int) -> ArrayLike:
    return (
        (2 * n - 2 * k - 1) * t ** (2 * n)
        - 2 * n * x ** (2 * k + 1) * t ** (2 * n - 2 * k - 1)
        + (2 * k + 1) * x ** (2 * n)
    )


def det_a(k: int, n: int, x: float, y: float, z: float) -> float:
    odd, even = 2 * k + 1, 2 * n
    return (y**odd - x**odd) * (z**even - x**even) - (z**odd - x**odd) * (
        y**even - x**even
    )


def _record(tally: SampleTally, violations: int, samples: int, note: str) -> None:
    tally.samples += samples
    tally.violations += violations
    if violations and tally.first_violation is None:
        tally.first_violation = note


def certify_no_6cycle(
    pair: MonomialPair,
    trials: int = 100,
    seed: int = DEFAULT_SEED,
    rng: Optional[np.random.Generator] = None,
) -> Girth8Certificate:
    result = classify(pair)
    if result.canonical_girth8 is None:
        raise PreconditionError(
            f"{pair} has girth {result.girth} ({result.case_label}); "
            "certificates apply to girth 8"
        )
    k, n = result.canonical_girth8
    rng = rng if rng is not None else np.random.default_rng(seed)

    monotonicity, positivity = SampleTally(), SampleTally()
    determinant, critical = SampleTally(), SampleTally()
    steps = GRID_STEP * np.arange(GRID_POINTS)

    for _ in range(trials):
        x = float(rng.uniform(-SAMPLE_RANGE, SAMPLE_RANGE))
        grid = -SAMPLE_RANGE + float(rng.uniform(0.0, GRID_STEP)) + steps

        # h_x is undefined at t = x; the gap does not break monotonicity
        keep = np.abs(grid - x) >= MONOTONE_GAP
        monotonicity.skipped += int(np.count_nonzero(~keep))
        values = h_x(grid[keep], x, k, n)
        rising = np.diff(values) > 0
        _record(
            monotonicity,
            int(np.count_nonzero(~rising)),
            rising.size,
            f"h_x not increasing near x={x!r}",
        )

        keep = np.abs(grid - x) >= POSITIVE_GAP * max(1.0, abs(x))
        positivity.skipped += int(np.count_nonzero(~keep))
        positive = big_h_x(grid[keep], x, k, n) > 0
        _record(
            positivity,
            int(np.count_nonzero(~positive)),
            positive.size,
            f"H_x(t) <= 0 for x={x!r}",
        )

        scale = max(1.0, abs(x) ** (2 * n))
        at_x = float(big_h_x(x, x, k, n))
        at_zero = float(big_h_x(0.0, x, k, n))
        expected = (2 * k + 1) * x ** (2 * n)
        misses = int(abs(at_x) > CRITICAL_TOL * 4 * n * scale)
        misses += int(abs(at_zero - expected) > CRITICAL_TOL * max(1.0, abs(expected)))
        _record(critical, misses, 2, f"critical values off at x={x!r}")

        y, z = (float(value) for value in rng.uniform(-SAMPLE_RANGE, SAMPLE_RANGE, 2))
        if len({x, y, z}) < 3:
            determinant.skipped += 1
            continue
        odd, even = 2 * k + 1, 2 * n
        size = abs((y**odd - x**odd) * (z**even - x**even)) + abs(
            (z**odd - x**odd) * (y**even - x**even)
        )
        vanishes = abs(det_a(k, n, x, y, z)) <= DET_TOL * size
        _record(determinant, int(vanishes), 1, f"det A ~ 0 at {(x, y, z)!r}")

    certificate = Girth8Certificate(
        pair=pair,
        k=k,
        n=n,
        trials=trials,
        seed=seed,
        monotonicity=monotonicity,
        positivity=positivity,
        determinant=determinant,
        critical_values=critical,
    )
    if certificate.passed:
        logger.success(f"No-6-cycle certificate for {pair} (k={k}, n={n}) passed")
    else:
        logger.error(f"No-6-cycle certificate for {pair} (k={k}, n={n}) failed")
    return certificate
