"""Walk a cycle type through the adjacency equations a_i + x_i = f_i(a_1, x_1)."""

from typing import List, Sequence, Tuple

from src.config import RESIDUAL_TOL
from src.core import CycleType, CycleWitness, IsoStep, MonomialPair, Vertex
from src.errors import ClosureError, VertexCollisionError
from src.isomorph import chain_vertex_map
from src.logger import get_logger

logger = get_logger("witness.propagate")


def adjacency_residual(pair: MonomialPair, point: Vertex, line: Vertex) -> float:
    """Worst magnitude-scaled error of the two equations joining point and line."""
    worst = 0.0
    for f, p_c, l_c in ((pair.f2, point.c2, line.c2), (pair.f3, point.c3, line.c3)):
        value = f(point.c1, line.c1)
        scale = max(1.0, abs(p_c), abs(l_c), abs(value))
        worst = max(worst, abs(p_c + l_c - value) / scale)
    return worst


def cycle_edges(vertices: Sequence[Vertex]) -> List[Tuple[Vertex, Vertex]]:
    """(point, line) for every edge of the closed walk, including last -> first."""
    edges = []
    for index, vertex in enumerate(vertices):
        following = vertices[(index + 1) % len(vertices)]
        if vertex.partite == "point":
            edges.append((vertex, following))
        else:
            edges.append((following, vertex))
    return edges


def max_cycle_residual(pair: MonomialPair, vertices: Sequence[Vertex]) -> float:
    return max(
        adjacency_residual(pair, point, line) for point, line in cycle_edges(vertices)
    )


def _check_collisions(vertices: Sequence[Vertex]) -> None:
    seen = set()
    for vertex in vertices:
        key = (vertex.partite, vertex.coords)
        if key in seen:
            raise VertexCollisionError(f"vertex {vertex.partite} {vertex.coords} repeats")
        seen.add(key)


def _closing_magnitude(pair: MonomialPair, cycle_type: CycleType) -> float:
    a1, x1 = cycle_type.a_coords[0], cycle_type.x_coords[-1]
    return max(abs(pair.f2(a1, x1)), abs(pair.f3(a1, x1)))


def closing_orientation(pair: MonomialPair, cycle_type: CycleType) -> CycleType:
    """The orientation whose closing edge carries the largest monomial values.

    The walk leaves the whole Delta error on the closing edge, and the residual
    there is scaled by that edge's magnitude. Ties keep the given orientation.
    """
    best, best_magnitude = cycle_type, _closing_magnitude(pair, cycle_type)
    for candidate in cycle_type.orientations():
        magnitude = _closing_magnitude(pair, candidate)
        if magnitude > best_magnitude:
            best, best_magnitude = candidate, magnitude
    return best


def propagate_cycle(
    pair: MonomialPair,
    cycle_type: CycleType,
    seed: Tuple[float, float] = (0.0, 0.0),
    tol: float = RESIDUAL_TOL,
) -> CycleWitness:
    """Build P1 ~ L1 ~ P2 ~ ... ~ Lk and check the closing edge Lk ~ P1.

    The cycle is walked in the orientation chosen by ``closing_orientation``;
    the witness records that orientation as its ``cycle_type``.
    """
    cycle_type = closing_orientation(pair, cycle_type)
    a, x = cycle_type.a_coords, cycle_type.x_coords
    f2, f3 = pair.f2, pair.f3

    point = Vertex.point(a[0], seed[0], seed[1])
    vertices: List[Vertex] = []
    for i in range(cycle_type.k):
        line = Vertex.line(
            x[i], f2(a[i], x[i]) - point.c2, f3(a[i], x[i]) - point.c3
        )
        vertices += [point, line]
        if i + 1 < cycle_type.k:
            point = Vertex.point(
                a[i + 1],
                f2(a[i + 1], x[i]) - line.c2,
                f3(a[i + 1], x[i]) - line.c3,
            )

    closure = adjacency_residual(pair, vertices[0], vertices[-1])
    if closure > tol:
        raise ClosureError(
            f"{2 * cycle_type.k}-cycle of type {cycle_type} does not close in "
            f"{pair} (residual {closure:.3e})"
        )
    if cycle_type.k <= 3:
        _check_collisions(vertices)

    residual = max_cycle_residual(pair, vertices)
    logger.debug(f"Propagated {cycle_type} in {pair}, residual {residual:.3e}")
    return CycleWitness(
        pair=pair,
        vertices=tuple(vertices),
        max_residual=residual,
        cycle_type=cycle_type,
    )


def pull_back(
    witness: CycleWitness, chain: Sequence[IsoStep], pair: MonomialPair
) -> CycleWitness:
    """Carry a witness of the chain's target graph back to ``pair``."""
    if not chain:
        return witness.model_copy(update={"pair": pair})

    inverse = chain_vertex_map(chain, inverse=True)
    vertices = [inverse(vertex) for vertex in witness.vertices]
    if vertices[0].partite == "line":
        vertices = vertices[1:] + vertices[:1]

    residual = max_cycle_residual(pair, vertices)
    logger.debug(
        f"Pulled {witness.length}-cycle back from {witness.pair} to {pair} "
        f"through {[step.label for step in chain]}"
    )
    return witness.model_copy(
        update={
            "pair": pair,
            "vertices": tuple(vertices),
            "max_residual": residual,
            "normalized_pair": witness.pair,
            "chain": tuple(chain),
        }
    )
