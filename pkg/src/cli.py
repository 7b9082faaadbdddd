"""Command line: classify, table, witness, certify8, oracle, curve, verify.

Records go to stdout as JSON or CSV; logs go to stderr. Exit codes are
0 on success, 2 for usage or precondition errors and 3 for failed checks.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from src.classify import classify
from src.config import Settings, load_settings
from src.core import (
    CycleWitness,
    GirthResult,
    IsoStep,
    MonomialPair,
    SampleTally,
    Vertex,
    WitnessReport,
)
from src.delta import has_real_4cycle_obstruction
from src.errors import AdgError, DomainError, PreconditionError
from src.ffgraph import oracle_row
from src.logger import get_logger, setup_logger
from src.roots import ScalarEquation, d_prop4, d_prop5, d_prop6
from src.utils import exponent_tuples
from src.witness import certify_no_6cycle, verify_witness, witness_for, witness_girth8

logger = get_logger("cli")

DEFAULT_FORMATS = {
    "classify": "json",
    "table": "csv",
    "witness": "json",
    "certify8": "json",
    "oracle": "csv",
    "curve": "csv",
    "verify": "json",
}


def _emit_json(record: Any) -> None:
    sys.stdout.write(json.dumps(record, indent=2) + "\n")


def _emit_csv(rows: Iterable[Dict[str, Any]], columns: Sequence[str]) -> None:
    writer = csv.DictWriter(sys.stdout, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def _emit(
    settings: Settings,
    command: str,
    rows: List[Dict[str, Any]],
    columns: Sequence[str],
    single: bool = False,
) -> None:
    fmt = settings.output_format or DEFAULT_FORMATS[command]
    if fmt == "csv":
        _emit_csv(rows, columns)
    else:
        _emit_json(rows[0] if single else rows)


def _emit_record(settings: Settings, command: str, record: Dict[str, Any]) -> None:
    """Nested records (witnesses, reports, certificates) have no CSV layout."""
    fmt = settings.output_format or DEFAULT_FORMATS[command]
    if fmt != "json":
        raise PreconditionError(f"{command} writes JSON only, not {fmt}")
    _emit_json(record)


def _tolerances(settings: Settings) -> Dict[str, Any]:
    return {
        "residual_tol": settings.residual_tol,
        "root_tol": settings.root_tol,
        "separation_tol": settings.separation_tol,
        "max_doublings": settings.max_doublings,
    }


def _pair(args: argparse.Namespace, settings: Settings) -> MonomialPair:
    return MonomialPair.of(args.s, args.t, args.u, args.v, max_exp=settings.max_exp)


def _chain(result: GirthResult) -> Tuple[IsoStep, ...]:
    if result.canonical_chain:
        return result.canonical_chain
    return result.normalized.chain if result.normalized else ()


def classification_record(pair: MonomialPair, result: GirthResult) -> Dict[str, Any]:
    canonical = result.canonical_girth8
    return {
        "s": pair.s,
        "t": pair.t,
        "u": pair.u,
        "v": pair.v,
        "girth": result.girth,
        "case": result.case_label,
        "canonical": f"k={canonical[0]} n={canonical[1]}" if canonical else "",
        "chain": ";".join(step.label for step in _chain(result)),
    }


def witness_to_dict(witness: CycleWitness) -> Dict[str, Any]:
    cycle_type = witness.cycle_type
    return {
        "pair": list(witness.pair.exponents),
        "construction": witness.construction,
        "cycle_length": witness.length,
        "max_residual": witness.max_residual,
        "vertices": [
            {"partite": vertex.partite, "coords": list(vertex.coords)}
            for vertex in witness.vertices
        ],
        "cycle_type": (
            {"a": list(cycle_type.a_coords), "x": list(cycle_type.x_coords)}
            if cycle_type
            else None
        ),
        "normalized_pair": (
            list(witness.normalized_pair.exponents) if witness.normalized_pair else None
        ),
        "chain": [step.label for step in witness.chain],
        "roots": dict(witness.roots),
        "equation": witness.equation,
    }


def witness_from_dict(
    record: Dict[str, Any], max_exp: Optional[int] = None
) -> CycleWitness:
    """Rebuild the verifiable part of a witness (pair and vertices)."""
    if "witness" in record:
        record = record["witness"]
    s, t, u, v = record["pair"]
    cap = max_exp if max_exp is not None else max(s, t, u, v)
    return CycleWitness(
        pair=MonomialPair.of(s, t, u, v, max_exp=cap),
        vertices=tuple(
            Vertex(partite=item["partite"], c1=c1, c2=c2, c3=c3)
            for item in record["vertices"]
            for c1, c2, c3 in [item["coords"]]
        ),
        max_residual=record.get("max_residual", 0.0),
    )


def report_to_dict(report: WitnessReport) -> Dict[str, Any]:
    return report.model_dump()


def cmd_classify(args: argparse.Namespace, settings: Settings) -> int:
    pair = _pair(args, settings)
    record = classification_record(pair, classify(pair))
    _emit(settings, "classify", [record], list(record), single=True)
    return 0


TABLE_COLUMNS = ("s", "t", "u", "v", "girth", "case", "canonical")


def cmd_table(args: argparse.Namespace, settings: Settings) -> int:
    if args.max_exp_table < 1:
        raise PreconditionError("table needs MAX_EXP >= 1")
    rows = []
    for pair in exponent_tuples(args.max_exp_table):
        record = classification_record(pair, classify(pair))
        rows.append({column: record[column] for column in TABLE_COLUMNS})
    logger.info(f"Classified {len(rows)} pairs up to exponent {args.max_exp_table}")
    _emit(settings, "table", rows, TABLE_COLUMNS)
    return 0


def cmd_witness(args: argparse.Namespace, settings: Settings) -> int:
    pair = _pair(args, settings)
    witness = witness_for(pair, **_tolerances(settings))
    report = verify_witness(witness, settings.residual_tol, settings.separation_tol)
    _emit_record(
        settings,
        "witness",
        {"witness": witness_to_dict(witness), "report": report_to_dict(report)},
    )
    return 0 if report.passed else 3


def _tally_dict(tally: SampleTally) -> Dict[str, Any]:
    return tally.model_dump() | {"passed": tally.passed}


def cmd_certify8(args: argparse.Namespace, settings: Settings) -> int:
    pair = _pair(args, settings)
    certificate = certify_no_6cycle(pair, trials=args.trials, seed=settings.seed)
    witness = witness_girth8(pair, **_tolerances(settings))
    report = verify_witness(witness, settings.residual_tol, settings.separation_tol)
    obstruction = has_real_4cycle_obstruction(pair.f2) or has_real_4cycle_obstruction(
        pair.f3
    )
    passed = certificate.passed and report.passed and obstruction

    _emit_record(
        settings,
        "certify8",
        {
            "pair": list(pair.exponents),
            "k": certificate.k,
            "n": certificate.n,
            "trials": certificate.trials,
            "seed": certificate.seed,
            "no_4cycle": obstruction,
            "monotonicity": _tally_dict(certificate.monotonicity),
            "positivity": _tally_dict(certificate.positivity),
            "determinant": _tally_dict(certificate.determinant),
            "critical_values": _tally_dict(certificate.critical_values),
            "witness_report": report_to_dict(report),
            "passed": passed,
        }
    )
    return 0 if passed else 3


ORACLE_COLUMNS = ("s", "t", "u", "v", "q", "bfs_girth", "delta2", "delta3", "agree")


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    rows = []
    disagreements = 0
    for pair in exponent_tuples(args.max_exp_oracle):
        row = oracle_row(args.q, pair)
        disagreements += not row.agrees
        rows.append(
            {
                "s": pair.s,
                "t": pair.t,
                "u": pair.u,
                "v": pair.v,
                "q": row.q,
                "bfs_girth": row.bfs_girth if row.bfs_girth is not None else "acyclic",
                "delta2": int(row.delta2),
                "delta3": "" if row.delta3 is None else int(row.delta3),
                "agree": int(row.agrees),
            }
        )
    _emit(settings, "oracle", rows, ORACLE_COLUMNS)
    if disagreements:
        logger.error(f"{disagreements} oracle disagreements over F{args.q}")
        return 3
    return 0


def curve_equation(args: argparse.Namespace) -> ScalarEquation:
    if args.prop == 4:
        return d_prop4(args.k, args.n, j=args.j, m=args.m)
    if args.prop == 5:
        return d_prop5(args.j, args.k, args.m, args.n)
    return d_prop6(args.j, args.k, args.m, args.n)


def cmd_curve(args: argparse.Namespace, settings: Settings) -> int:
    if not args.lo < args.hi or args.steps < 1:
        raise PreconditionError("curve needs lo < hi and steps >= 1")
    if args.prop == 5 and args.lo <= 0 <= args.hi:
        raise DomainError("D_prop5 is undefined at c = 0; keep 0 outside [lo, hi]")
    eq = curve_equation(args)

    rows = []
    previous = 0.0
    for x in np.linspace(args.lo, args.hi, args.steps + 1):
        value = eq(float(x))
        change = bool(rows) and math.copysign(1, value) != math.copysign(1, previous)
        rows.append({"x": float(x), "D": value, "sign_change": int(change)})
        previous = value
    logger.info(
        f"{eq.label} sampled at {len(rows)} points, "
        f"{sum(row['sign_change'] for row in rows)} sign changes"
    )
    _emit(settings, "curve", rows, ("x", "D", "sign_change"))
    return 0


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    witness = witness_from_dict(json.loads(text))
    report = verify_witness(witness, settings.residual_tol, settings.separation_tol)
    _emit_record(settings, "verify", report_to_dict(report))
    return 0 if report.passed else 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="residual tolerance")
    common.add_argument("--root-tol", type=float, default=None, help="root tolerance")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (ADG_SEED)")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--max-exp", type=int, default=None, help="exponent cap")
    common.add_argument("--log-level", default=None)
    return common


def _add_exponents(parser: argparse.ArgumentParser) -> None:
    for name in ("s", "t", "u", "v"):
        parser.add_argument(name, type=int)


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="adg", description="Girth of real monomial graphs Gamma(X^sY^t, X^uY^v)"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("classify", parents=[common], help="girth and case label")
    _add_exponents(sub)
    sub.set_defaults(handler=cmd_classify)

    sub = commands.add_parser("table", parents=[common], help="classify [1, MAX_EXP]^4")
    sub.add_argument("max_exp_table", type=int, metavar="MAX_EXP")
    sub.set_defaults(handler=cmd_table)

    sub = commands.add_parser("witness", parents=[common], help="explicit shortest cycle")
    _add_exponents(sub)
    sub.set_defaults(handler=cmd_witness)

    sub = commands.add_parser("certify8", parents=[common], help="girth-8 certificate")
    _add_exponents(sub)
    sub.add_argument("--trials", type=int, default=100)
    sub.set_defaults(handler=cmd_certify8)

    sub = commands.add_parser("oracle", parents=[common], help="finite-field cross-check")
    sub.add_argument("q", type=int)
    sub.add_argument("max_exp_oracle", type=int, metavar="MAX_EXP")
    sub.set_defaults(handler=cmd_oracle)

    sub = commands.add_parser("curve", parents=[common], help="sample a D function")
    sub.add_argument("prop", type=int, choices=(4, 5, 6))
    for name in ("j", "k", "m"):
        sub.add_argument(f"--{name}", type=int, default=0)
    sub.add_argument("--n", type=int, default=1)
    sub.add_argument("--lo", type=float, required=True)
    sub.add_argument("--hi", type=float, required=True)
    sub.add_argument("--steps", type=int, default=300)
    sub.set_defaults(handler=cmd_curve)

    sub = commands.add_parser("verify", parents=[common], help="recheck a witness JSON")
    sub.add_argument("file", metavar="FILE", help="witness JSON path or - for stdin")
    sub.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger(args.log_level or "WARNING")
    try:
        settings = load_settings(
            seed=args.seed,
            residual_tol=args.tol,
            root_tol=args.root_tol,
            output_format=args.format,
            max_exp=args.max_exp,
            log_level=args.log_level,
        )
        setup_logger(settings.log_level)
        return args.handler(args, settings)
    except ValidationError as e:
        logger.error(f"Invalid input: {e.errors()[0]['msg']}")
        return 2
    except AdgError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
