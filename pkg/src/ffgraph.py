"""Finite-field oracle: Gamma over F_q for small primes q, exact girth and
exhaustive cycle-condition search."""

from collections import deque
from typing import List, Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict

from src.core import MonomialPair, Vertex
from src.errors import OracleRangeError
from src.logger import get_logger
from src.utils import is_prime

logger = get_logger("ffgraph")

MIN_Q = 3
MAX_Q = 13
MAX_Q_DELTA3 = 7


class FiniteFieldGraph(BaseModel):
    """Points are ids 0..q^3-1, lines q^3..2q^3-1, coordinates in base q."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    q: int
    pair: MonomialPair
    graph: nx.Graph

    @property
    def num_vertices(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def num_edges(self) -> int:
        return self.graph.number_of_edges()

    def is_regular(self) -> bool:
        return all(degree == self.q for _, degree in self.graph.degree())


class OracleRow(BaseModel):
    pair: MonomialPair
    q: int
    bfs_girth: Optional[int]
    delta2: bool
    delta3: Optional[bool]

    @property
    def agrees(self) -> bool:
        if (self.bfs_girth == 4) != self.delta2:
            return False
        if self.delta3 is None:
            return True
        return (self.bfs_girth == 6) == (not self.delta2 and self.delta3)


def _check_q(q: int, limit: int = MAX_Q) -> None:
    if not is_prime(q) or not MIN_Q <= q <= limit:
        raise OracleRangeError(f"q must be a prime in [{MIN_Q}, {limit}], got {q}")


def reduced_exponent(e: int, q: int) -> int:
    """a^e = a^e' on F_q for every a, with 1 <= e' <= q-1."""
    return (e - 1) % (q - 1) + 1


def power_table(e: int, q: int) -> np.ndarray:
    e = reduced_exponent(e, q)
    return np.array([pow(a, e, q) for a in range(q)], dtype=np.int64)


def _monomial_table(i_exp: int, j_exp: int, q: int) -> np.ndarray:
    """table[a, x] = a^i x^j mod q."""
    return np.outer(power_table(i_exp, q), power_table(j_exp, q)) % q


def decode_vertex(q: int, vertex_id: int) -> Vertex:
    cube = q**3
    partite = "point" if vertex_id < cube else "line"
    code = vertex_id % cube
    c1, rest = divmod(code, q * q)
    c2, c3 = divmod(rest, q)
    return Vertex(partite=partite, c1=c1, c2=c2, c3=c3)


def build_graph(q: int, pair: MonomialPair) -> FiniteFieldGraph:
    _check_q(q)
    f2 = _monomial_table(pair.s, pair.t, q)
    f3 = _monomial_table(pair.u, pair.v, q)

    a1, a2, a3, x1 = np.meshgrid(*(np.arange(q),) * 4, indexing="ij")
    x2 = (f2[a1, x1] - a2) % q
    x3 = (f3[a1, x1] - a3) % q
    points = (a1 * q + a2) * q + a3
    lines = q**3 + (x1 * q + x2) * q + x3

    graph = nx.Graph()
    graph.add_nodes_from(range(q**3), bipartite=0)
    graph.add_nodes_from(range(q**3, 2 * q**3), bipartite=1)
    graph.add_edges_from(zip(points.ravel().tolist(), lines.ravel().tolist()))

    built = FiniteFieldGraph(q=q, pair=pair, graph=graph)
    logger.debug(
        f"Built Gamma_F{q}{pair}: {built.num_vertices} vertices, {built.num_edges} edges"
    )
    return built


def _orbit_roots(q: int) -> List[int]:
    # translations in the 2nd/3rd coordinates move every vertex to one of these
    return [a1 * q * q for a1 in range(q)] + [q**3 + x1 * q * q for x1 in range(q)]


def bfs_girth(g: FiniteFieldGraph, exhaustive: bool = False) -> Optional[int]:
    """Shortest cycle length, or None for a forest."""
    adjacency = g.graph.adj
    roots = list(g.graph.nodes) if exhaustive else _orbit_roots(g.q)
    best: Optional[int] = None

    for root in roots:
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length

    logger.debug(f"BFS girth of Gamma_F{g.q}{g.pair}: {best}")
    return best


def bruteforce_delta_cycles(q: int, pair: MonomialPair, k: int) -> bool:
    """Whether distinct first coordinates satisfy the 2k-cycle conditions for f2 and f3."""
    if k == 2:
        _check_q(q)
    elif k == 3:
        _check_q(q, MAX_Q_DELTA3)
    else:
        raise OracleRangeError(f"brute force covers k in {{2, 3}}, got {k}")

    index = np.arange(q)
    found = np.ones((q,) * (2 * k), dtype=bool)
    for i_exp, j_exp in ((pair.s, pair.t), (pair.u, pair.v)):
        pa, px = power_table(i_exp, q), power_table(j_exp, q)
        found &= _delta_vanishes(pa, px, k, q)

    axes = [_axis(index, position, 2 * k) for position in range(2 * k)]
    for group in (axes[:k], axes[k:]):
        for first in range(k):
            for second in range(first + 1, k):
                found &= group[first] != group[second]
    return bool(found.any())


def _axis(values: np.ndarray, position: int, ndim: int) -> np.ndarray:
    shape = [1] * ndim
    shape[position] = values.size
    return values.reshape(shape)


def _delta_vanishes(pa: np.ndarray, px: np.ndarray, k: int, q: int) -> np.ndarray:
    """Sum over r of x_r^j (a_r^i - a_{r+1}^i) == 0 mod q, axes (a_1..a_k, x_1..x_k)."""
    ndim = 2 * k
    a_pows = [_axis(pa, r, ndim) for r in range(k)]
    x_pows = [_axis(px, k + r, ndim) for r in range(k)]
    total = sum(x_pows[r] * (a_pows[r] - a_pows[(r + 1) % k]) for r in range(k))
    return np.asarray(total) % q == 0


def oracle_row(q: int, pair: MonomialPair) -> OracleRow:
    girth = bfs_girth(build_graph(q, pair))
    delta2 = bruteforce_delta_cycles(q, pair, 2)
    delta3 = bruteforce_delta_cycles(q, pair, 3) if q <= MAX_Q_DELTA3 else None
    row = OracleRow(pair=pair, q=q, bfs_girth=girth, delta2=delta2, delta3=delta3)
    if not row.agrees:
        logger.error(f"Oracle disagreement over F{q} for {pair}: {row}")
    return row
