"""Girth classification of the real monomial graphs Gamma(X^sY^t, X^uY^v)."""

from typing import List, Tuple

from src.core import (
    CaseLabel,
    GirthResult,
    IsoStep,
    MonomialPair,
    NormalizedForm,
)
from src.errors import IsomorphismError, PreconditionError
from src.isomorph import PolyFn, apply_chain_to_pair, apply_iso_to_pair
from src.logger import get_logger

logger = get_logger("classify")

# even position -> (girth-8 label, girth-6 label)
_MIXED_LABELS: Tuple[Tuple[CaseLabel, CaseLabel], ...] = (
    ("P3a", "P2d"),
    ("P3b", "P2e"),
    ("P3c", "P2f"),
    ("P3d", "P2g"),
)

# I4 first, then I1: the chain moves the even exponent into the v slot
_NORMALIZING_CHAINS: Tuple[Tuple[IsoStep, ...], ...] = (
    (IsoStep.swap(), IsoStep.star()),
    (IsoStep.swap(),),
    (IsoStep.star(),),
    (),
)


def _even_positions(pair: MonomialPair) -> List[int]:
    return [index for index, e in enumerate(pair.exponents) if e % 2 == 0]


def _is_girth8(pair: MonomialPair, even: int) -> bool:
    s, t, u, v = pair.exponents
    if even == 0:
        return t == v and s > u
    if even == 1:
        return s == u and t > v
    if even == 2:
        return t == v and u > s
    return s == u and v > t


def normalize_mixed(pair: MonomialPair) -> NormalizedForm:
    """Bring a pair with exactly one even exponent to (2j+1, 2k+1, 2m+1, 2n)."""
    evens = _even_positions(pair)
    if len(evens) != 1:
        raise PreconditionError(
            f"{pair} has {len(evens)} even exponents; normalization needs exactly one"
        )

    chain = _NORMALIZING_CHAINS[evens[0]]
    s, t, u, v = apply_chain_to_pair(chain, pair).exponents
    form = NormalizedForm(j=s // 2, k=t // 2, m=u // 2, n=v // 2, chain=chain)
    logger.debug(
        f"{pair} normalized to {form.exponents} via "
        f"{[step.label for step in chain] or 'identity'}"
    )
    return form


def _canonical(form: NormalizedForm) -> Tuple[Tuple[int, int], Tuple[IsoStep, ...]]:
    chain = form.chain + ((IsoStep.oddroot(form.j),) if form.j > 0 else ())
    return (form.k, form.n), chain


def classify(pair: MonomialPair) -> GirthResult:
    s, t, u, v = pair.exponents
    if (s % 2 == 0 or t % 2 == 0) and (u % 2 == 0 or v % 2 == 0):
        result = GirthResult(girth=4, case_label="P1")
    else:
        evens = _even_positions(pair)
        if len(evens) == 1:
            even = evens[0]
            form = normalize_mixed(pair)
            girth8_label, girth6_label = _MIXED_LABELS[even]
            if _is_girth8(pair, even):
                canonical, chain = _canonical(form)
                result = GirthResult(
                    girth=8,
                    case_label=girth8_label,
                    normalized=form,
                    canonical_girth8=canonical,
                    canonical_chain=chain,
                )
            else:
                result = GirthResult(girth=6, case_label=girth6_label, normalized=form)
        elif len(evens) == 2:
            label: CaseLabel = "P2a" if s % 2 == 0 else "P2b"
            result = GirthResult(girth=6, case_label=label)
        else:
            result = GirthResult(girth=6, case_label="P2c")

    logger.debug(f"{pair}: girth {result.girth} ({result.case_label})")
    return result


def canonical_girth8(pair: MonomialPair) -> Tuple[int, int]:
    result = classify(pair)
    if result.canonical_girth8 is None:
        raise PreconditionError(
            f"{pair} has girth {result.girth} ({result.case_label}), not 8"
        )
    return result.canonical_girth8


def _split_terms(f3: PolyFn, s: int, t: int):
    shear = 0.0
    mixed = []
    g: dict = {}
    h: dict = {}
    for i, j, coef in f3.terms:
        if i >= 1 and j >= 1:
            if (i, j) == (s, t):
                shear = coef
            else:
                mixed.append((i, j, coef))
        elif j == 0:
            g[i] = coef
        else:
            h[j] = coef
    return shear, mixed, g, h


def _dense(coefficients: dict) -> Tuple[float, ...]:
    if not coefficients:
        return ()
    return tuple(-coefficients.get(d, 0.0) for d in range(max(coefficients) + 1))


def classify_polynomial_pair(
    f2: PolyFn, f3: PolyFn
) -> Tuple[MonomialPair, Tuple[IsoStep, ...], GirthResult]:
    """Classify c2 X^sY^t, c3 X^uY^v + delta f2 + g(X) + h(Y) by stripping the extras.

    Returns the monomial pair, the I5/I3/I2/I4 chain that reaches it and its
    classification.
    """
    if len(f2.terms) != 1:
        raise IsomorphismError(f"f2 = {f2} is not a scaled monomial")
    s, t, c2 = f2.terms[0]
    if s < 1 or t < 1:
        raise IsomorphismError(f"f2 = {f2} must involve both X and Y")

    shear, mixed, g, h = _split_terms(f3, s, t)
    if len(mixed) != 1:
        raise IsomorphismError(
            f"f3 = {f3} must have exactly one mixed term besides a multiple of f2"
        )
    u, v, c3 = mixed[0]

    chain: List[IsoStep] = []
    if shear:
        chain.append(IsoStep.shear(-shear / c2))
    if g or h:
        chain.append(IsoStep.separable(_dense(g), _dense(h)))
    if c3 != 1:
        chain.append(IsoStep.scale(1 / c3))
    if c2 != 1:
        chain += [IsoStep.swap(), IsoStep.scale(1 / c2), IsoStep.swap()]

    g2, g3 = f2, f3
    for step in chain:
        g2, g3 = apply_iso_to_pair(step, g2, g3)
    for f in (g2, g3):
        if not PolyFn.of(f).is_monomial:
            raise IsomorphismError(f"stripping left a non-monomial function {f}")

    pair = MonomialPair.of(s, t, u, v, max_exp=max(s, t, u, v))
    logger.info(f"{f2}, {f3} reduces to {pair} in {len(chain)} steps")
    return pair, tuple(chain), classify(pair)
