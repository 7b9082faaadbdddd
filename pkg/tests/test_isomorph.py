import numpy as np
import pytest

from src.classify import classify
from src.core import IsoStep, MonomialPair, Vertex
from src.delta import MonomialFn
from src.errors import IsomorphismError
from src.isomorph import (
    A1,
    A2,
    A3,
    PolyFn,
    VertexMap,
    apply_chain_to_pair,
    apply_iso_to_pair,
    automorphism_A,
    automorphism_map,
    chain_vertex_map,
    check_adjacency_preserved,
    edge_transport,
    line_transport,
    point_transport,
    vertex_map_of,
)
from src.utils import exponent_tuples

XY = MonomialFn(i_exp=1, j_exp=1)
XY2 = MonomialFn(i_exp=1, j_exp=2)
X2Y = MonomialFn(i_exp=2, j_exp=1)
CANONICAL = MonomialPair.of(1, 1, 1, 2)


def _is_edge(point: Vertex, line: Vertex, pair: MonomialPair, tol: float = 1e-9) -> bool:
    return (
        abs(point.c2 + line.c2 - pair.f2(point.c1, line.c1)) <= tol
        and abs(point.c3 + line.c3 - pair.f3(point.c1, line.c1)) <= tol
    )


def _edge_from(a1: float, a2: float, a3: float, x1: float) -> tuple:
    point = Vertex.point(a1, a2, a3)
    line = Vertex.line(x1, a1 * x1 - a2, a1 * x1 * x1 - a3)
    return point, line


class TestApplyIsoToPair:
    def test_swap(self) -> None:
        assert apply_iso_to_pair(IsoStep.swap(), XY, X2Y) == (X2Y, XY)

    def test_star(self) -> None:
        f2, f3 = apply_iso_to_pair(
            IsoStep.star(), XY, MonomialFn(i_exp=2, j_exp=3)
        )
        assert (f2, f3) == (XY, MonomialFn(i_exp=3, j_exp=2))

    def test_oddroot(self) -> None:
        f2, f3 = apply_iso_to_pair(
            IsoStep.oddroot(1), MonomialFn(i_exp=3, j_exp=1), MonomialFn(i_exp=3, j_exp=2)
        )
        assert (f2, f3) == (XY, XY2)

    def test_oddroot_needs_divisible_exponents(self) -> None:
        with pytest.raises(IsomorphismError):
            apply_iso_to_pair(IsoStep.oddroot(1), XY, XY2)

    def test_scale_and_shear_give_polynomials(self) -> None:
        _, scaled = apply_iso_to_pair(IsoStep.scale(2.0), XY, XY2)
        assert isinstance(scaled, PolyFn)
        assert not scaled.is_monomial
        _, sheared = apply_iso_to_pair(IsoStep.shear(1.0), XY, XY2)
        assert sheared.terms == ((1, 1, 1.0), (1, 2, 1.0))

    def test_separable_terms(self) -> None:
        _, f3 = apply_iso_to_pair(IsoStep.separable((1.0, 2.0), (0.0, 0.0, 3.0)), XY, XY2)
        assert f3(2.0, 1.0) == pytest.approx(2.0 + 1.0 + 4.0 + 3.0)

    def test_chain(self) -> None:
        chain = (IsoStep.swap(), IsoStep.star())
        assert apply_chain_to_pair(chain, MonomialPair.of(2, 1, 1, 1)).exponents == (
            1,
            1,
            1,
            2,
        )


class TestPolyFn:
    def test_merges_and_drops_cancelled_terms(self) -> None:
        f = PolyFn(terms=((1, 1, 2.0), (1, 1, -2.0), (2, 0, 1.0)))
        assert f.terms == ((2, 0, 1.0),)

    def test_rejects_negative_exponents(self) -> None:
        with pytest.raises(ValueError):
            PolyFn(terms=((-1, 1, 1.0),))

    def test_to_monomial(self) -> None:
        assert PolyFn.of(XY2).to_monomial() == XY2
        with pytest.raises(IsomorphismError):
            PolyFn.of(XY2, 3.0).to_monomial()


class TestVertexMaps:
    def test_swap_preserves_adjacency(self) -> None:
        check = check_adjacency_preserved(
            vertex_map_of(IsoStep.swap()), CANONICAL, MonomialPair.of(1, 2, 1, 1)
        )
        assert check.passed
        assert check.trials == 1000

    def test_star_moves_points_to_lines(self) -> None:
        vertex_map = vertex_map_of(IsoStep.star())
        assert vertex_map(Vertex.point(1, 2, 3)) == Vertex.line(1, 2, 3)
        check = check_adjacency_preserved(
            vertex_map, MonomialPair.of(1, 1, 2, 3), MonomialPair.of(1, 1, 3, 2)
        )
        assert check.passed

    def test_oddroot_inverse(self) -> None:
        inverse = vertex_map_of(IsoStep.oddroot(1), inverse=True)
        image = inverse(Vertex.point(8, 2, 3))
        assert image.partite == "point"
        assert image.coords == pytest.approx((2.0, 2.0, 3.0), rel=1e-15)
        assert inverse(Vertex.line(8, 2, 3)) == Vertex.line(8, 2, 3)

    def test_oddroot_preserves_adjacency(self) -> None:
        check = check_adjacency_preserved(
            vertex_map_of(IsoStep.oddroot(1)), MonomialPair.of(3, 1, 3, 2), CANONICAL
        )
        assert check.passed

    def test_oddroot_round_trip(self) -> None:
        step = IsoStep.oddroot(2)
        round_trip = vertex_map_of(step).then(vertex_map_of(step, inverse=True))
        rng = np.random.default_rng(1)
        for c1, c2, c3 in rng.uniform(-5, 5, size=(1000, 3)):
            vertex = Vertex.point(float(c1), float(c2), float(c3))
            assert round_trip(vertex).c1 == pytest.approx(vertex.c1, rel=1e-9, abs=1e-12)

    def test_unsupported_step(self) -> None:
        with pytest.raises(IsomorphismError):
            vertex_map_of(IsoStep.scale(2.0))

    def test_chain_maps_compose(self) -> None:
        vertex_map = chain_vertex_map((IsoStep.swap(), IsoStep.star()))
        assert vertex_map(Vertex.point(1, 2, 3)) == Vertex.line(1, 3, 2)
        assert check_adjacency_preserved(
            vertex_map, MonomialPair.of(2, 1, 1, 1), CANONICAL
        ).passed

    @pytest.mark.slow
    def test_girth8_chains_preserve_adjacency(self) -> None:
        rng = np.random.default_rng(2)
        for pair in exponent_tuples(6):
            result = classify(pair)
            if result.canonical_girth8 is None:
                continue
            k, n = result.canonical_girth8
            target = MonomialPair.of(1, 2 * k + 1, 1, 2 * n)
            forward = chain_vertex_map(result.canonical_chain)
            assert check_adjacency_preserved(forward, pair, target, rng=rng).passed


class TestAutomorphisms:
    def test_examples(self) -> None:
        assert automorphism_A(A1(a=2), Vertex.point(1, 0, 0)) == Vertex.point(3, 0, 0)
        assert automorphism_A(A1(a=2), Vertex.line(1, 1, 1)) == Vertex.line(1, 3, 3)
        assert automorphism_A(A2(b=1), Vertex.point(1, 1, 1)) == Vertex.point(1, 2, 4)
        vertex = Vertex.line(1.5, -2.0, 0.25)
        assert automorphism_A(A3(c=0, d=0), vertex) == vertex

    @pytest.mark.parametrize(
        "automorphism", [A1(a=1.7), A2(b=-0.6), A3(c=2.5, d=-1.25)]
    )
    def test_preserve_adjacency(self, automorphism) -> None:
        vertex_map = VertexMap(label=repr(automorphism), apply=automorphism)
        assert check_adjacency_preserved(vertex_map, CANONICAL, CANONICAL).passed

    def test_integer_inputs_are_exact(self) -> None:
        point, line = _edge_from(2, 3, -1, 4)
        for automorphism in (A1(a=3), A2(b=-2), A3(c=1, d=5)):
            assert _is_edge(automorphism(point), automorphism(line), CANONICAL, tol=0.0)

    def test_wrong_map_is_caught(self) -> None:
        def broken(v: Vertex) -> Vertex:
            if v.partite == "point":
                return Vertex.point(v.c1 + 1.0, v.c2, v.c3)
            return Vertex.line(v.c1, v.c2 + v.c1, v.c3)

        check = check_adjacency_preserved(
            VertexMap(label="broken", apply=broken), CANONICAL, CANONICAL
        )
        assert not check.passed
        assert check.counterexample is not None


class TestTransports:
    def test_point_transport(self) -> None:
        rng = np.random.default_rng(4)
        for _ in range(100):
            p, target = (Vertex.point(*map(float, rng.uniform(-3, 3, 3))) for _ in range(2))
            moved = point_transport(p, target)(p)
            assert moved.coords == pytest.approx(target.coords, abs=1e-12)

    def test_line_transport(self) -> None:
        rng = np.random.default_rng(5)
        for _ in range(100):
            line, target = (Vertex.line(*map(float, rng.uniform(-3, 3, 3))) for _ in range(2))
            moved = line_transport(line, target)(line)
            assert moved.coords == pytest.approx(target.coords, abs=1e-9)

    def test_edge_transport(self) -> None:
        rng = np.random.default_rng(6)
        for _ in range(100):
            edge = _edge_from(*map(float, rng.uniform(-3, 3, 4)))
            target = _edge_from(*map(float, rng.uniform(-3, 3, 4)))
            vertex_map = edge_transport(edge, target)
            assert vertex_map(edge[0]).coords == pytest.approx(target[0].coords, abs=1e-9)
            assert vertex_map(edge[1]).coords == pytest.approx(target[1].coords, abs=1e-9)

    def test_transports_are_automorphisms(self) -> None:
        vertex_map = automorphism_map(A1(a=0.5), A2(b=-1.5), A3(c=0.25, d=2.0))
        assert check_adjacency_preserved(vertex_map, CANONICAL, CANONICAL).passed
