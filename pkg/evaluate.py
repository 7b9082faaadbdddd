#!/usr/bin/env python3

import argparse
import cmath
import json
import math
import time
from typing import Callable, Dict, List

from src.classify import classify
from src.config import DEFAULT_SEED
from src.core import IsoStep, MonomialPair, Vertex
from src.delta import MonomialFn, delta2_complex
from src.errors import AdgError
from src.ffgraph import oracle_row
from src.isomorph import (
    A1,
    A2,
    A3,
    VertexMap,
    check_adjacency_preserved,
    chain_vertex_map,
    vertex_map_of,
)
from src.logger import get_logger, setup_logger
from src.roots import spurious_point_check
from src.utils import exponent_tuples, log_suite_summary, log_system_header, make_rng
from src.witness import (
    certify_no_6cycle,
    normalized_equation,
    verify_witness,
    witness_for,
)

setup_logger("INFO")
logger = get_logger("evaluate")

Counts = Dict[str, int]


def _tally(checks: List[bool]) -> Counts:
    return {"total": len(checks), "passed": sum(checks)}


def _brute_girth8(pair: MonomialPair) -> bool:
    s, t, u, v = pair.exponents
    odd = [e % 2 == 1 for e in pair.exponents]
    if sum(odd) != 3:
        return False
    return (
        (not odd[0] and t == v and s > u)
        or (not odd[1] and s == u and t > v)
        or (not odd[2] and t == v and u > s)
        or (not odd[3] and s == u and v > t)
    )


def evaluate_classification(max_exp: int) -> Counts:
    with open("test_pairs.json", "r") as f:
        expectations = json.load(f)

    checks = []
    for case in expectations:
        pair = MonomialPair.of(*case["pair"])
        result = classify(pair)
        canonical = case["expected_canonical"]
        ok = (
            result.girth == case["expected_girth"]
            and result.case_label == case["expected_case"]
            and result.canonical_girth8 == (tuple(canonical) if canonical else None)
        )
        checks.append(ok)
        status = "PASS" if ok else "FAIL"
        logger.info(
            f"{status} {pair}: girth {result.girth} ({result.case_label}), "
            f"expected {case['expected_girth']} ({case['expected_case']})"
        )

    girth8 = brute8 = 0
    for pair in exponent_tuples(max_exp):
        girth = classify(pair).girth
        checks.append(girth == classify(pair.swapped()).girth == classify(pair.starred()).girth)
        girth8 += girth == 8
        brute8 += _brute_girth8(pair)
    checks.append(girth8 == brute8)
    logger.info(f"Girth-8 pairs in [1, {max_exp}]^4: {girth8} (direct count {brute8})")
    return _tally(checks)


def evaluate_witnesses(max_exp: int) -> Counts:
    checks = []
    for pair in exponent_tuples(max_exp):
        try:
            witness = witness_for(pair)
        except AdgError as e:
            logger.warning(f"FAIL {pair}: {e}")
            checks.append(False)
            continue
        report = verify_witness(witness)
        checks.append(report.passed and report.cycle_length == classify(pair).girth)
    return _tally(checks)


def evaluate_oracle(max_exp: int, fields: List[int]) -> Counts:
    checks = []
    for q in fields:
        for pair in exponent_tuples(max_exp):
            checks.append(oracle_row(q, pair).agrees)
        logger.info(f"F{q}: {sum(checks)}/{len(checks)} rows agree so far")
    return _tally(checks)


def evaluate_certificates(max_exp: int, trials: int, seed: int) -> Counts:
    checks = []
    for pair in exponent_tuples(max_exp):
        if classify(pair).girth == 8:
            checks.append(certify_no_6cycle(pair, trials=trials, seed=seed).passed)
    return _tally(checks)


def evaluate_root_anchors(max_exp: int) -> Counts:
    checks = []
    for pair in exponent_tuples(max_exp):
        result = classify(pair)
        if result.girth != 6 or result.normalized is None:
            continue
        branch, eq = normalized_equation(result.normalized)
        if branch == "prop4":
            checks.append(eq(0.0) == -2.0)
        elif branch == "prop5":
            checks.append(eq(-1.0) < 0)
        else:
            checks.append(spurious_point_check(eq).passed)
    return _tally(checks)


def evaluate_complex_counterexample() -> Counts:
    omega = complex(-0.5, math.sqrt(3) / 2)
    values = [
        abs(delta2_complex(MonomialFn(i_exp=e, j_exp=e), 1, omega, 1, -1))
        for e in (3, 6)
    ]
    logger.info(f"|Delta_2| on (1, omega; 1, -1): {values} (omega = {cmath.exp(2j * math.pi / 3)})")
    real_girth = classify(MonomialPair.of(3, 3, 6, 6)).girth
    return _tally([value <= 1e-12 for value in values] + [real_girth == 6])


def evaluate_isomorphisms(max_exp: int, seed: int) -> Counts:
    canonical = MonomialPair.of(1, 1, 1, 2)
    rng = make_rng(seed)
    checks = []

    automorphisms: List[Callable[[Vertex], Vertex]] = [
        A1(a=float(rng.uniform(-3, 3))),
        A2(b=float(rng.uniform(-3, 3))),
        A3(c=float(rng.uniform(-3, 3)), d=float(rng.uniform(-3, 3))),
    ]
    for automorphism in automorphisms:
        vertex_map = VertexMap(label=repr(automorphism), apply=automorphism)
        checks.append(
            check_adjacency_preserved(vertex_map, canonical, canonical, rng=rng).passed
        )

    step = IsoStep.oddroot(1)
    round_trip = vertex_map_of(step).then(vertex_map_of(step, inverse=True))
    for c1, c2, c3 in rng.uniform(-5, 5, size=(1000, 3)):
        vertex = Vertex.point(float(c1), float(c2), float(c3))
        back = round_trip(vertex)
        checks.append(abs(back.c1 - vertex.c1) <= 1e-9 * max(1.0, abs(vertex.c1)))

    for pair in exponent_tuples(max_exp):
        result = classify(pair)
        if result.canonical_girth8 is None:
            continue
        k, n = result.canonical_girth8
        target = MonomialPair.of(1, 2 * k + 1, 1, 2 * n, max_exp=max_exp)
        forward = chain_vertex_map(result.canonical_chain)
        checks.append(check_adjacency_preserved(forward, pair, target, rng=rng).passed)
    return _tally(checks)


def print_evaluation_summary(results: Dict[str, Counts]) -> bool:
    logger.info("\n" + "=" * 60)
    logger.info("ACCEPTANCE SUMMARY")
    logger.info("=" * 60)
    log_suite_summary(results)

    passed = sum(counts["passed"] for counts in results.values())
    total = sum(counts["total"] for counts in results.values())
    share = passed / total * 100 if total else 100.0
    failed_suites = [name for name, c in results.items() if c["passed"] != c["total"]]

    logger.info("\nAcceptance Grade:")
    if not failed_suites:
        grade = "A (All checks pass)"
    elif share >= 99:
        grade = "B (Isolated failures)"
    elif share >= 90:
        grade = "C (Systematic failures)"
    else:
        grade = "D (Broken)"
    logger.info(f"   Overall Grade: {grade}")
    if failed_suites:
        logger.error(f"   Failing suites: {', '.join(failed_suites)}")
    return not failed_suites


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the acceptance suite")
    parser.add_argument("--max-exp", type=int, default=6)
    parser.add_argument("--oracle-max-exp", type=int, default=4)
    parser.add_argument("--fields", type=int, nargs="+", default=[3, 5, 7])
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = parser.parse_args()

    log_system_header("Girth classification acceptance suite")
    suites = {
        "Classification": lambda: evaluate_classification(args.max_exp),
        "Witnesses": lambda: evaluate_witnesses(args.max_exp),
        "Finite-field oracle": lambda: evaluate_oracle(args.oracle_max_exp, args.fields),
        "Girth-8 certificates": lambda: evaluate_certificates(
            args.max_exp, args.trials, args.seed
        ),
        "Root anchors": lambda: evaluate_root_anchors(args.max_exp),
        "Complex counterexample": evaluate_complex_counterexample,
        "Isomorphisms": lambda: evaluate_isomorphisms(args.max_exp, args.seed),
    }

    results = {}
    for name, suite in suites.items():
        start_time = time.time()
        results[name] = suite()
        logger.info(f"{name}: done in {time.time() - start_time:.2f}s")

    return 0 if print_evaluation_summary(results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
