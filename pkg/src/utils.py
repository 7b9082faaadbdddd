from itertools import product
from typing import Dict, Iterator, Optional

import numpy as np

from src.core import MonomialPair
from src.logger import get_logger

logger = get_logger("utils")


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


def exponent_tuples(max_exp: int, min_exp: int = 1) -> Iterator[MonomialPair]:
    """All pairs with exponents in [min_exp, max_exp], in lexicographic order."""
    for s, t, u, v in product(range(min_exp, max_exp + 1), repeat=4):
        yield MonomialPair.of(s, t, u, v, max_exp=max_exp)


def make_rng(seed: int, stream: Optional[int] = None) -> np.random.Generator:
    """Seeded generator; ``stream`` splits independent substreams off one seed."""
    if stream is None:
        return np.random.default_rng(seed)
    return np.random.default_rng([seed, stream])


def log_system_header(title: str) -> None:
    separator = "=" * len(title)
    logger.info(f"{title}")
    logger.debug(separator)


def log_suite_summary(results: Dict[str, Dict[str, int]]) -> None:
    logger.info("Acceptance Summary:")
    for name, counts in results.items():
        total = counts["total"]
        passed = counts["passed"]
        share = passed / total * 100 if total else 100.0
        logger.info(f"   - {name}: {passed}/{total} ({share:.1f}%)")
