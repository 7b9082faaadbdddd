from typing import Any, Dict, Iterator, Literal, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationInfo,
    field_validator,
    model_validator,
)

from src.config import DEFAULT_MAX_EXP
from src.delta import MonomialFn

CaseLabel = Literal[
    "P1",
    "P2a",
    "P2b",
    "P2c",
    "P2d",
    "P2e",
    "P2f",
    "P2g",
    "P3a",
    "P3b",
    "P3c",
    "P3d",
]
Partite = Literal["point", "line"]
IsoKind = Literal[
    "I1_star", "I2_scale", "I3_separable", "I4_swap", "I5_shear", "L5_oddroot"
]

Coords = Tuple[float, float, float]


class MonomialPair(BaseModel):
    """Exponents of f2 = X^s Y^t and f3 = X^u Y^v.

    The upper cap defaults to ``DEFAULT_MAX_EXP``; pass
    ``context={"max_exp": n}`` to ``model_validate`` to change it.
    """

    model_config = ConfigDict(frozen=True)

    s: int = Field(ge=1)
    t: int = Field(ge=1)
    u: int = Field(ge=1)
    v: int = Field(ge=1)

    @field_validator("s", "t", "u", "v")
    @classmethod
    def _within_cap(cls, value: int, info: ValidationInfo) -> int:
        cap = (info.context or {}).get("max_exp", DEFAULT_MAX_EXP)
        if value > cap:
            raise ValueError(f"exponent {value} exceeds the cap {cap}")
        return value

    @classmethod
    def of(cls, s: int, t: int, u: int, v: int, max_exp: Optional[int] = None):
        context = {"max_exp": max_exp} if max_exp is not None else None
        return cls.model_validate({"s": s, "t": t, "u": u, "v": v}, context=context)

    @property
    def exponents(self) -> Tuple[int, int, int, int]:
        return (self.s, self.t, self.u, self.v)

    @property
    def f2(self) -> MonomialFn:
        return MonomialFn(i_exp=self.s, j_exp=self.t)

    @property
    def f3(self) -> MonomialFn:
        return MonomialFn(i_exp=self.u, j_exp=self.v)

    def swapped(self) -> "MonomialPair":
        return self.model_copy(update={"s": self.u, "t": self.v, "u": self.s, "v": self.t})

    def starred(self) -> "MonomialPair":
        return self.model_copy(update={"s": self.t, "t": self.s, "u": self.v, "v": self.u})

    def __str__(self) -> str:
        return f"({self.f2}, {self.f3})"


def parity_signature(pair: MonomialPair) -> Tuple[int, int, int, int]:
    return (pair.s % 2, pair.t % 2, pair.u % 2, pair.v % 2)


class IsoStep(BaseModel):
    """One isomorphism step of a transform chain, with its parameters."""

    model_config = ConfigDict(frozen=True)

    kind: IsoKind
    c: Optional[float] = None
    g: Tuple[float, ...] = ()
    h: Tuple[float, ...] = ()
    delta: Optional[float] = None
    m: Optional[int] = None

    @model_validator(mode="after")
    def _check_parameters(self) -> "IsoStep":
        if self.kind == "I2_scale" and (self.c is None or self.c == 0):
            raise ValueError("I2_scale needs a non-zero constant c")
        if self.kind == "I5_shear" and self.delta is None:
            raise ValueError("I5_shear needs delta")
        if self.kind == "L5_oddroot" and (self.m is None or self.m < 0):
            raise ValueError("L5_oddroot needs m >= 0")
        return self

    @classmethod
    def star(cls) -> "IsoStep":
        return cls(kind="I1_star")

    @classmethod
    def scale(cls, c: float) -> "IsoStep":
        return cls(kind="I2_scale", c=c)

    @classmethod
    def separable(cls, g: Tuple[float, ...], h: Tuple[float, ...]) -> "IsoStep":
        return cls(kind="I3_separable", g=tuple(g), h=tuple(h))

    @classmethod
    def swap(cls) -> "IsoStep":
        return cls(kind="I4_swap")

    @classmethod
    def shear(cls, delta: float) -> "IsoStep":
        return cls(kind="I5_shear", delta=delta)

    @classmethod
    def oddroot(cls, m: int) -> "IsoStep":
        return cls(kind="L5_oddroot", m=m)

    @property
    def label(self) -> str:
        if self.kind == "L5_oddroot":
            return f"L5(m={self.m})"
        if self.kind == "I2_scale":
            return f"I2(c={self.c!r})"
        if self.kind == "I5_shear":
            return f"I5(delta={self.delta!r})"
        if self.kind == "I3_separable":
            return f"I3(g={list(self.g)}, h={list(self.h)})"
        return self.kind.split("_")[0]


class NormalizedForm(BaseModel):
    """Exponents (2j+1, 2k+1, 2m+1, 2n) reached from a pair by ``chain``."""

    model_config = ConfigDict(frozen=True)

    j: int = Field(ge=0)
    k: int = Field(ge=0)
    m: int = Field(ge=0)
    n: int = Field(ge=1)
    chain: Tuple[IsoStep, ...] = ()

    @property
    def exponents(self) -> Tuple[int, int, int, int]:
        return (2 * self.j + 1, 2 * self.k + 1, 2 * self.m + 1, 2 * self.n)

    @property
    def pair(self) -> MonomialPair:
        s, t, u, v = self.exponents
        return MonomialPair.model_construct(s=s, t=t, u=u, v=v)


class GirthResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    girth: Literal[4, 6, 8]
    case_label: CaseLabel
    normalized: Optional[NormalizedForm] = None
    canonical_girth8: Optional[Tuple[int, int]] = None
    canonical_chain: Tuple[IsoStep, ...] = ()

    @model_validator(mode="after")
    def _canonical_iff_girth8(self) -> "GirthResult":
        if (self.girth == 8) != (self.canonical_girth8 is not None):
            raise ValueError("canonical_girth8 is present exactly for girth 8")
        if self.canonical_girth8 is not None:
            k, n = self.canonical_girth8
            if n <= k:
                raise ValueError("canonical girth-8 form needs n > k")
        return self


class CycleType(BaseModel):
    """First coordinates (a_1..a_k; x_1..x_k) of a candidate 2k-cycle."""

    model_config = ConfigDict(frozen=True)

    a_coords: Tuple[float, ...]
    x_coords: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_shape(self) -> "CycleType":
        if len(self.a_coords) != len(self.x_coords):
            raise ValueError("a_coords and x_coords must have the same length")
        if self.k not in (2, 3, 4):
            raise ValueError("cycle types have k in {2, 3, 4}")
        if self.k <= 3:
            if len(set(self.a_coords)) != self.k or len(set(self.x_coords)) != self.k:
                raise ValueError("4- and 6-cycle types need distinct coordinates")
        return self

    @property
    def k(self) -> int:
        return len(self.a_coords)

    def orientations(self) -> Iterator["CycleType"]:
        """Every rotation and reversal of the same cycle, starting with itself.

        The forward walk from point r closes on the edge L_{r-1} ~ P_r, the
        backward walk from point r closes on L_r ~ P_r.
        """
        a, x, k = self.a_coords, self.x_coords, self.k
        for r in range(k):
            yield CycleType(
                a_coords=a[r:] + a[:r],
                x_coords=x[r:] + x[:r],
            )
            yield CycleType(
                a_coords=tuple(a[(r - i) % k] for i in range(k)),
                x_coords=tuple(x[(r - 1 - i) % k] for i in range(k)),
            )

    def __str__(self) -> str:
        a = ", ".join(f"{value:g}" for value in self.a_coords)
        x = ", ".join(f"{value:g}" for value in self.x_coords)
        return f"({a}; {x})"


class Vertex(BaseModel):
    model_config = ConfigDict(frozen=True)

    partite: Partite
    c1: float
    c2: float
    c3: float

    @property
    def coords(self) -> Coords:
        return (self.c1, self.c2, self.c3)

    @classmethod
    def point(cls, c1: float, c2: float, c3: float) -> "Vertex":
        return cls(partite="point", c1=c1, c2=c2, c3=c3)

    @classmethod
    def line(cls, c1: float, c2: float, c3: float) -> "Vertex":
        return cls(partite="line", c1=c1, c2=c2, c3=c3)


class CycleWitness(BaseModel):
    """Closed cycle as alternating vertices; the closing edge is last -> first."""

    model_config = ConfigDict(frozen=True)

    pair: MonomialPair
    vertices: Tuple[Vertex, ...]
    max_residual: float = Field(ge=0)
    construction: str = ""
    cycle_type: Optional[CycleType] = None
    normalized_pair: Optional[MonomialPair] = None
    chain: Tuple[IsoStep, ...] = ()
    roots: Dict[str, float] = Field(default_factory=dict)
    equation: Optional[Dict[str, Any]] = None

    @model_validator(mode="after")
    def _even_cycle(self) -> "CycleWitness":
        if len(self.vertices) < 4 or len(self.vertices) % 2:
            raise ValueError("a cycle witness needs an even number (>= 4) of vertices")
        return self

    @property
    def length(self) -> int:
        return len(self.vertices)


class WitnessReport(BaseModel):
    passed: bool
    cycle_length: int
    max_residual: float
    min_separation: float
    alternating: bool
    failures: Tuple[str, ...] = ()


class SampleTally(BaseModel):
    samples: int = 0
    skipped: int = 0
    violations: int = 0
    first_violation: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.samples > 0


class Girth8Certificate(BaseModel):
    pair: MonomialPair
    k: int
    n: int
    trials: int
    seed: int
    monotonicity: SampleTally
    positivity: SampleTally
    determinant: SampleTally
    critical_values: SampleTally

    @property
    def passed(self) -> bool:
        return all(
            tally.passed
            for tally in (
                self.monotonicity,
                self.positivity,
                self.determinant,
                self.critical_values,
            )
        )
