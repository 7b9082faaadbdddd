from abc import ABC, abstractmethod
from itertools import combinations
from typing import Dict, FrozenSet, Sequence, Tuple

from src.classify import classify
from src.config import MAX_DOUBLINGS, RESIDUAL_TOL, ROOT_TOL, SEPARATION_TOL
from src.core import CycleType, CycleWitness, GirthResult, MonomialPair, NormalizedForm
from src.errors import (
    BracketNotFoundError,
    DistinctnessError,
    PreconditionError,
    RootFindingError,
    WitnessVerificationError,
)
from src.logger import get_logger
from src.roots import (
    ScalarEquation,
    d_prop4,
    d_prop5,
    d_prop6,
    expand_bracket,
    find_bracketed_root,
    side_constant,
    spurious_point_check,
)
from src.witness.propagate import propagate_cycle, pull_back
from src.witness.verifier import verify_witness

logger = get_logger("witness.constructions")

SPURIOUS_OFFSETS = (1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9)


class BaseCycleConstruction(ABC):
    """One constructive proof: builds a witness for the case labels it covers."""

    def __init__(
        self,
        name: str,
        labels: FrozenSet[str],
        residual_tol: float = RESIDUAL_TOL,
        root_tol: float = ROOT_TOL,
        separation_tol: float = SEPARATION_TOL,
        max_doublings: int = MAX_DOUBLINGS,
    ):
        self.name = name
        self.labels = labels
        self.residual_tol = residual_tol
        self.root_tol = root_tol
        self.separation_tol = separation_tol
        self.max_doublings = max_doublings

    @abstractmethod
    def build(self, pair: MonomialPair, result: GirthResult) -> CycleWitness:
        pass

    def construct(self, pair: MonomialPair) -> CycleWitness:
        result = classify(pair)
        if result.case_label not in self.labels:
            raise PreconditionError(
                f"{self.name} covers {sorted(self.labels)}, "
                f"but {pair} is {result.case_label}"
            )

        witness = self.build(pair, result).model_copy(update={"construction": self.name})
        report = verify_witness(witness, self.residual_tol, self.separation_tol)
        if not report.passed:
            raise WitnessVerificationError(
                f"{self.name} produced an invalid witness for {pair}: "
                f"{'; '.join(report.failures)}"
            )
        logger.success(
            f"{self.name}: {witness.length}-cycle in {pair} "
            f"(residual {witness.max_residual:.3e})"
        )
        return witness

    def _propagate(self, pair: MonomialPair, cycle_type: CycleType) -> CycleWitness:
        return propagate_cycle(pair, cycle_type, tol=self.residual_tol)


class FourCycleConstruction(BaseCycleConstruction):
    CYCLE_TYPE = CycleType(a_coords=(1.0, -1.0), x_coords=(1.0, -1.0))

    def __init__(self, **tolerances: float):
        super().__init__("girth4", frozenset({"P1"}), **tolerances)

    def build(self, pair: MonomialPair, result: GirthResult) -> CycleWitness:
        return self._propagate(pair, self.CYCLE_TYPE)


class SameParitySixCycleConstruction(BaseCycleConstruction):
    CYCLE_TYPE = CycleType(a_coords=(1.0, 0.0, -1.0), x_coords=(-1.0, 1.0, 0.0))

    def __init__(self, **tolerances: float):
        super().__init__("girth6_sameparity", frozenset({"P2a", "P2b", "P2c"}), **tolerances)

    def build(self, pair: MonomialPair, result: GirthResult) -> CycleWitness:
        return self._propagate(pair, self.CYCLE_TYPE)


class MixedSixCycleConstruction(BaseCycleConstruction):
    """Solves the one-variable equation D = 0 of the matching branch.

    n <= k uses type (0,1,-1; 1,y,z), n > k with m < j uses (0,1,c; 0,1,z),
    and n > k with m > j uses (1,0,-3; x,1,z).
    """

    def __init__(self, **tolerances: float):
        super().__init__(
            "girth6_mixed", frozenset({"P2d", "P2e", "P2f", "P2g"}), **tolerances
        )

    def build(self, pair: MonomialPair, result: GirthResult) -> CycleWitness:
        form = result.normalized
        if form is None:
            raise PreconditionError(f"{pair} has no normalized form")

        branch, eq = normalized_equation(form)
        if branch == "prop4":
            root = self._solve_prop4(eq)
            z = eq.companion(root)
            cycle_type = self._distinct_type((0.0, 1.0, -1.0), (1.0, root, z))
            roots = {"y": root, "z": z}
        elif branch == "prop5":
            root = self._solve_prop5(eq)
            z = eq.companion(root)
            cycle_type = self._distinct_type((0.0, 1.0, root), (0.0, 1.0, z))
            roots = {"c": root, "z": z}
        else:
            root = self._solve_prop6(eq)
            z = eq.companion(root)
            cycle_type = self._distinct_type((1.0, 0.0, -3.0), (root, 1.0, z))
            roots = {"x": root, "z": z}

        normalized = self._propagate(form.pair, cycle_type).model_copy(
            update={"roots": roots, "equation": eq.model_dump()}
        )
        return pull_back(normalized, form.chain, pair)

    def _distinct_type(
        self, a_coords: Sequence[float], x_coords: Sequence[float]
    ) -> CycleType:
        for coords in (a_coords, x_coords):
            for p, q in combinations(coords, 2):
                if abs(p - q) < self.separation_tol:
                    raise DistinctnessError(
                        f"coordinates {p} and {q} are closer than {self.separation_tol}"
                    )
        return CycleType(a_coords=tuple(a_coords), x_coords=tuple(x_coords))

    def _solve_prop4(self, eq: ScalarEquation) -> float:
        at_zero = eq(0.0)
        if at_zero != -2.0:
            raise RootFindingError(f"{eq.label}(0) = {at_zero}, expected -2")
        lo, hi = expand_bracket(eq, 0.0, -1, self.max_doublings)
        return find_bracketed_root(eq, lo, hi, self.root_tol)

    def _solve_prop5(self, eq: ScalarEquation) -> float:
        at_minus_one = eq(-1.0)
        if at_minus_one >= 0:
            raise RootFindingError(f"{eq.label}(-1) = {at_minus_one} is not negative")
        lo, hi = expand_bracket(eq, -1.0, -1, self.max_doublings)
        return find_bracketed_root(eq, lo, hi, self.root_tol)

    def _solve_prop6(self, eq: ScalarEquation) -> float:
        check = spurious_point_check(eq)
        if not check.passed:
            logger.warning(
                f"{eq.label}: D(1) = {check.value_at_one:.3e}, "
                f"D'(1) = {check.slope_at_one:.3e}"
            )
        constant = side_constant(eq)
        if constant == 1:
            raise RootFindingError(f"{eq.label}: side constant is exactly 1")

        # C > 1: D > 0 just left of 1 and D -> -inf on the left; C < 1 mirrors it
        direction, wanted_sign = (-1, 1) if constant > 1 else (1, -1)
        for offset in SPURIOUS_OFFSETS:
            start = 1.0 + direction * offset
            if (eq(start) > 0) != (wanted_sign > 0):
                logger.debug(f"{eq.label}: wrong sign at 1{direction * offset:+.0e}")
                continue
            try:
                lo, hi = expand_bracket(eq, start, direction, self.max_doublings)
            except BracketNotFoundError:
                continue
            return find_bracketed_root(eq, lo, hi, self.root_tol)

        raise BracketNotFoundError(
            f"{eq.label}: no root found away from the spurious point x = 1"
        )


class EightCycleConstruction(BaseCycleConstruction):
    CYCLE_TYPE = CycleType(
        a_coords=(1.0, 0.0, -1.0, 0.0), x_coords=(1.0, -1.0, 1.0, -1.0)
    )

    def __init__(self, **tolerances: float):
        super().__init__("girth8", frozenset({"P3a", "P3b", "P3c", "P3d"}), **tolerances)

    def build(self, pair: MonomialPair, result: GirthResult) -> CycleWitness:
        if result.canonical_girth8 is None:
            raise PreconditionError(f"{pair} has no canonical girth-8 form")
        k, n = result.canonical_girth8
        canonical = MonomialPair.of(1, 2 * k + 1, 1, 2 * n, max_exp=max(pair.exponents))
        witness = self._propagate(canonical, self.CYCLE_TYPE)
        return pull_back(witness, result.canonical_chain, pair)


def _constructions(**tolerances: float) -> Dict[str, BaseCycleConstruction]:
    four = FourCycleConstruction(**tolerances)
    same = SameParitySixCycleConstruction(**tolerances)
    mixed = MixedSixCycleConstruction(**tolerances)
    eight = EightCycleConstruction(**tolerances)
    routes: Dict[str, BaseCycleConstruction] = {}
    for construction in (four, same, mixed, eight):
        routes.update({label: construction for label in construction.labels})
    return routes


def witness_girth4(pair: MonomialPair, **tolerances: float) -> CycleWitness:
    return FourCycleConstruction(**tolerances).construct(pair)


def witness_girth6_samepairity(pair: MonomialPair, **tolerances: float) -> CycleWitness:
    return SameParitySixCycleConstruction(**tolerances).construct(pair)


def witness_girth6_mixed(pair: MonomialPair, **tolerances: float) -> CycleWitness:
    return MixedSixCycleConstruction(**tolerances).construct(pair)


def witness_girth8(pair: MonomialPair, **tolerances: float) -> CycleWitness:
    return EightCycleConstruction(**tolerances).construct(pair)


def witness_for(pair: MonomialPair, **tolerances: float) -> CycleWitness:
    """Route a pair to the construction matching its case label."""
    label = classify(pair).case_label
    logger.info(f"Routing {pair} ({label}) to its cycle construction")
    return _constructions(**tolerances)[label].construct(pair)


def normalized_equation(form: NormalizedForm) -> Tuple[str, ScalarEquation]:
    """Which 6-cycle branch a normalized mixed pair takes, and its equation."""
    if form.n <= form.k:
        return "prop4", d_prop4(form.k, form.n, j=form.j, m=form.m)
    if form.m < form.j:
        return "prop5", d_prop5(form.j, form.k, form.m, form.n)
    return "prop6", d_prop6(form.j, form.k, form.m, form.n)
