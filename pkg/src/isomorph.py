"""Graph isomorphisms of Gamma(f2, f3) and automorphisms of Gamma(XY, XY^2).

Pair transformers cover I1 (star), I2 (scale), I3 (separable terms),
I4 (swap) and I5 (shear), plus the odd-root map L5. Vertex maps exist for
the steps transform chains use (I1, I4, L5).
"""

import math
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from src.config import RESIDUAL_TOL
from src.core import IsoStep, MonomialPair, Vertex
from src.delta import MonomialFn
from src.errors import IsomorphismError
from src.logger import get_logger
from src.roots import signed_pow

logger = get_logger("isomorph")

__all__ = [
    "IsoStep",
    "PolyFn",
    "VertexMap",
    "A1",
    "A2",
    "A3",
    "AdjacencyCheck",
    "apply_iso_to_pair",
    "apply_chain_to_pair",
    "vertex_map_of",
    "chain_vertex_map",
    "automorphism_A",
    "automorphism_map",
    "check_adjacency_preserved",
    "point_transport",
    "line_transport",
    "edge_transport",
]

Term = Tuple[int, int, float]


class PolyFn(BaseModel):
    """sum(coef * X^i * Y^j) over ``terms``; like terms are merged."""

    model_config = ConfigDict(frozen=True)

    terms: Tuple[Term, ...] = ()

    @field_validator("terms")
    @classmethod
    def _merge_terms(cls, terms: Tuple[Term, ...]) -> Tuple[Term, ...]:
        merged: dict = {}
        largest: dict = {}
        for i, j, coef in terms:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term X^{i}Y^{j}")
            merged[(i, j)] = merged.get((i, j), 0.0) + float(coef)
            largest[(i, j)] = max(largest.get((i, j), 0.0), abs(float(coef)))
        # cancellation residue below 1e-12 of the inputs counts as zero
        return tuple(
            (i, j, coef)
            for (i, j), coef in sorted(merged.items())
            if abs(coef) > 1e-12 * largest[(i, j)]
        )

    @classmethod
    def of(cls, f: Union["PolyFn", MonomialFn], coef: float = 1.0) -> "PolyFn":
        if isinstance(f, PolyFn):
            return f.scaled(coef)
        return cls(terms=((f.i_exp, f.j_exp, coef),))

    def __call__(self, x: float, y: float) -> float:
        return math.fsum(coef * x**i * y**j for i, j, coef in self.terms)

    def scaled(self, c: float) -> "PolyFn":
        return PolyFn(terms=tuple((i, j, c * coef) for i, j, coef in self.terms))

    def plus(self, other: "PolyFn") -> "PolyFn":
        return PolyFn(terms=self.terms + other.terms)

    def starred(self) -> "PolyFn":
        return PolyFn(terms=tuple((j, i, coef) for i, j, coef in self.terms))

    @property
    def is_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        i, j, coef = self.terms[0]
        return math.isclose(coef, 1.0, rel_tol=1e-12) and i >= 1 and j >= 1

    def to_monomial(self) -> MonomialFn:
        if not self.is_monomial:
            raise IsomorphismError(f"{self} is not a monomial X^iY^j")
        i, j, _ = self.terms[0]
        return MonomialFn(i_exp=i, j_exp=j)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{coef!r}*X^{i}Y^{j}" for i, j, coef in self.terms)


Fn = Union[MonomialFn, PolyFn]


def _separable(g: Sequence[float], h: Sequence[float]) -> PolyFn:
    terms = [(i, 0, coef) for i, coef in enumerate(g)]
    terms += [(0, j, coef) for j, coef in enumerate(h)]
    return PolyFn(terms=tuple(terms))


def _odd_root_exponent(i: int, root: int) -> int:
    if i % root:
        raise IsomorphismError(f"X exponent {i} is not divisible by {root}")
    return i // root


def _odd_root(f: Fn, m: int) -> Fn:
    root = 2 * m + 1
    if isinstance(f, MonomialFn):
        return MonomialFn(i_exp=_odd_root_exponent(f.i_exp, root), j_exp=f.j_exp)
    return PolyFn(
        terms=tuple(
            (_odd_root_exponent(i, root), j, coef) for i, j, coef in f.terms
        )
    )


def apply_iso_to_pair(step: IsoStep, f2: Fn, f3: Fn) -> Tuple[Fn, Fn]:
    """Image of Gamma(f2, f3) under one step. I2, I3 and I5 return PolyFn."""
    if step.kind == "I1_star":
        if isinstance(f2, MonomialFn) and isinstance(f3, MonomialFn):
            return (
                MonomialFn(i_exp=f2.j_exp, j_exp=f2.i_exp),
                MonomialFn(i_exp=f3.j_exp, j_exp=f3.i_exp),
            )
        return PolyFn.of(f2).starred(), PolyFn.of(f3).starred()
    if step.kind == "I4_swap":
        return f3, f2
    if step.kind == "L5_oddroot":
        return _odd_root(f2, step.m or 0), _odd_root(f3, step.m or 0)
    if step.kind == "I2_scale":
        return f2, PolyFn.of(f3, step.c or 1.0)
    if step.kind == "I3_separable":
        return f2, PolyFn.of(f3).plus(_separable(step.g, step.h))
    if step.kind == "I5_shear":
        return f2, PolyFn.of(f3).plus(PolyFn.of(f2, step.delta or 0.0))
    raise IsomorphismError(f"unknown isomorphism step {step.kind}")


def _as_monomial(f: Fn) -> MonomialFn:
    return f if isinstance(f, MonomialFn) else f.to_monomial()


def apply_chain_to_pair(chain: Iterable[IsoStep], pair: MonomialPair) -> MonomialPair:
    f2: Fn = pair.f2
    f3: Fn = pair.f3
    for step in chain:
        f2, f3 = apply_iso_to_pair(step, f2, f3)
    g2, g3 = _as_monomial(f2), _as_monomial(f3)
    return MonomialPair.of(
        g2.i_exp, g2.j_exp, g3.i_exp, g3.j_exp, max_exp=max(pair.exponents)
    )


class VertexMap(BaseModel):
    """Vertex -> Vertex map; may move points to lines (I1)."""

    model_config = ConfigDict(frozen=True)

    label: str
    apply: Callable[[Vertex], Vertex]

    def __call__(self, vertex: Vertex) -> Vertex:
        return self.apply(vertex)

    def then(self, other: "VertexMap") -> "VertexMap":
        first, second = self.apply, other.apply
        return VertexMap(
            label=f"{self.label} ; {other.label}",
            apply=lambda vertex: second(first(vertex)),
        )

    @classmethod
    def identity(cls) -> "VertexMap":
        return cls(label="id", apply=lambda vertex: vertex)


def _swap_components(vertex: Vertex) -> Vertex:
    return vertex.model_copy(update={"c2": vertex.c3, "c3": vertex.c2})


def _swap_partite(vertex: Vertex) -> Vertex:
    partite = "line" if vertex.partite == "point" else "point"
    return vertex.model_copy(update={"partite": partite})


def vertex_map_of(step: IsoStep, inverse: bool = False) -> VertexMap:
    if step.kind == "I4_swap":
        return VertexMap(label="I4", apply=_swap_components)
    if step.kind == "I1_star":
        return VertexMap(label="I1", apply=_swap_partite)
    if step.kind == "L5_oddroot":
        root = 2 * (step.m or 0) + 1

        def raise_point(vertex: Vertex) -> Vertex:
            if vertex.partite == "line":
                return vertex
            return vertex.model_copy(update={"c1": vertex.c1**root})

        def root_point(vertex: Vertex) -> Vertex:
            if vertex.partite == "line":
                return vertex
            return vertex.model_copy(update={"c1": signed_pow(vertex.c1, 1, root)})

        if inverse:
            return VertexMap(label=f"{step.label}^-1", apply=root_point)
        return VertexMap(label=step.label, apply=raise_point)
    raise IsomorphismError(f"no vertex map for {step.kind}")


def chain_vertex_map(chain: Sequence[IsoStep], inverse: bool = False) -> VertexMap:
    """Forward map of the chain, or its inverse (inverse steps in reverse order)."""
    steps = list(reversed(chain)) if inverse else list(chain)
    result = VertexMap.identity()
    for step in steps:
        result = result.then(vertex_map_of(step, inverse=inverse))
    return result


class A1(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float

    def __call__(self, v: Vertex) -> Vertex:
        if v.partite == "point":
            return Vertex.point(v.c1 + self.a, v.c2, v.c3)
        return Vertex.line(v.c1, v.c2 + self.a * v.c1, v.c3 + self.a * v.c1**2)


class A2(BaseModel):
    model_config = ConfigDict(frozen=True)

    b: float

    def __call__(self, v: Vertex) -> Vertex:
        b = self.b
        if v.partite == "point":
            return Vertex.point(v.c1, v.c2 + b * v.c1, v.c3 + 2 * b * v.c2 + b * b * v.c1)
        return Vertex.line(v.c1 + b, v.c2, v.c3 + 2 * b * v.c2)


class A3(BaseModel):
    model_config = ConfigDict(frozen=True)

    c: float = 0.0
    d: float = 0.0

    def __call__(self, v: Vertex) -> Vertex:
        if v.partite == "point":
            return Vertex.point(v.c1, v.c2 - self.c, v.c3 - self.d)
        return Vertex.line(v.c1, v.c2 + self.c, v.c3 + self.d)


Automorphism = Union[A1, A2, A3]


def automorphism_A(kind: Automorphism, v: Vertex) -> Vertex:
    return kind(v)


def automorphism_map(*steps: Automorphism) -> VertexMap:
    """Compose automorphisms left to right into one VertexMap."""
    result = VertexMap.identity()
    for step in steps:
        result = result.then(VertexMap(label=repr(step), apply=step))
    return result


def point_transport(p: Vertex, target: Vertex) -> VertexMap:
    """A1 then A3 composition sending point p to point target."""
    return automorphism_map(
        A1(a=target.c1 - p.c1), A3(c=p.c2 - target.c2, d=p.c3 - target.c3)
    )


def line_transport(line: Vertex, target: Vertex) -> VertexMap:
    b = target.c1 - line.c1
    return automorphism_map(
        A2(b=b),
        A3(c=target.c2 - line.c2, d=target.c3 - line.c3 - 2 * b * line.c2),
    )


def edge_transport(
    edge: Tuple[Vertex, Vertex], target: Tuple[Vertex, Vertex]
) -> VertexMap:
    """Map edge (point, line) onto edge target; both must be edges of Gamma(XY, XY^2)."""
    (p, line), (p_target, line_target) = edge, target
    move_point = point_transport(p, p_target)
    moved_line = move_point(line)
    b = line_target.c1 - moved_line.c1
    fix_point = automorphism_map(
        A2(b=b),
        A3(c=b * p_target.c1, d=2 * b * p_target.c2 + b * b * p_target.c1),
    )
    return move_point.then(fix_point)


class AdjacencyCheck(BaseModel):
    passed: bool
    trials: int
    max_error: float
    counterexample: Optional[Tuple[Vertex, Vertex]] = None


def _pair_functions(pair: Union[MonomialPair, Tuple[Fn, Fn]]) -> Tuple[Fn, Fn]:
    if isinstance(pair, MonomialPair):
        return pair.f2, pair.f3
    return pair


def _edge_error(f2: Fn, f3: Fn, point: Vertex, line: Vertex) -> float:
    worst = 0.0
    for f, p_c, l_c in ((f2, point.c2, line.c2), (f3, point.c3, line.c3)):
        value = f(point.c1, line.c1)
        scale = max(1.0, abs(p_c), abs(l_c), abs(value))
        worst = max(worst, abs(p_c + l_c - value) / scale)
    return worst


def check_adjacency_preserved(
    vertex_map: VertexMap,
    src_pair: Union[MonomialPair, Tuple[Fn, Fn]],
    dst_pair: Union[MonomialPair, Tuple[Fn, Fn]],
    trials: int = 1000,
    rng: Optional[np.random.Generator] = None,
    tol: float = RESIDUAL_TOL,
) -> AdjacencyCheck:
    """Map random source edges and test adjacency in the destination graph."""
    rng = rng if rng is not None else np.random.default_rng(0)
    src2, src3 = _pair_functions(src_pair)
    dst2, dst3 = _pair_functions(dst_pair)

    worst = 0.0
    samples = rng.uniform(-5.0, 5.0, size=(trials, 4))
    for a1, x1, a2, a3 in samples:
        point = Vertex.point(float(a1), float(a2), float(a3))
        line = Vertex.line(
            float(x1), src2(point.c1, x1) - point.c2, src3(point.c1, x1) - point.c3
        )
        image_p, image_l = vertex_map(point), vertex_map(line)
        if image_p.partite == image_l.partite:
            error = math.inf
        elif image_p.partite == "line":
            error = _edge_error(dst2, dst3, image_l, image_p)
        else:
            error = _edge_error(dst2, dst3, image_p, image_l)
        worst = max(worst, error)
        if error > tol:
            logger.debug(f"{vertex_map.label} breaks edge {point} ~ {line} ({error:.3e})")
            return AdjacencyCheck(
                passed=False,
                trials=trials,
                max_error=error,
                counterexample=(point, line),
            )

    logger.debug(f"{vertex_map.label} preserved {trials} edges (max error {worst:.3e})")
    return AdjacencyCheck(passed=True, trials=trials, max_error=worst)
