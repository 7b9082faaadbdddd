from itertools import combinations
from typing import List

from src.config import RESIDUAL_TOL, SEPARATION_TOL
from src.core import CycleWitness, WitnessReport
from src.logger import get_logger
from src.witness.propagate import adjacency_residual, cycle_edges

logger = get_logger("witness.verifier")


def verify_witness(
    witness: CycleWitness,
    residual_tol: float = RESIDUAL_TOL,
    separation_tol: float = SEPARATION_TOL,
) -> WitnessReport:
    """Recheck a witness from its coordinates alone."""
    vertices = witness.vertices
    failures: List[str] = []

    alternating = all(
        vertices[i].partite != vertices[(i + 1) % len(vertices)].partite
        for i in range(len(vertices))
    )
    if not alternating:
        failures.append("vertices do not alternate between points and lines")

    residual = 0.0
    for index, (point, line) in enumerate(cycle_edges(vertices)):
        if point.partite == line.partite:
            continue
        error = adjacency_residual(witness.pair, point, line)
        residual = max(residual, error)
        if error > residual_tol:
            failures.append(f"edge {index} residual {error:.3e} exceeds {residual_tol:.1e}")

    separation = float("inf")
    for (i, u), (j, w) in combinations(enumerate(vertices), 2):
        if u.partite != w.partite:
            continue
        distance = max(abs(p - q) for p, q in zip(u.coords, w.coords))
        separation = min(separation, distance)
        if distance < separation_tol:
            failures.append(f"vertices {i} and {j} coincide (separation {distance:.3e})")

    report = WitnessReport(
        passed=not failures,
        cycle_length=len(vertices),
        max_residual=residual,
        min_separation=separation,
        alternating=alternating,
        failures=tuple(failures),
    )
    if report.passed:
        logger.debug(
            f"{report.cycle_length}-cycle in {witness.pair} verified "
            f"(residual {residual:.3e}, separation {separation:.3e})"
        )
    else:
        logger.error(f"Witness for {witness.pair} failed: {'; '.join(failures)}")
    return report
