import csv
import io
import json
from pathlib import Path
from unittest.mock import patch

import pytest

from src.cli import main
from src.config import DEFAULT_SEED, Settings, get_settings, load_settings
from src.errors import (
    AdgError,
    ClosureError,
    ConfigurationError,
    DomainError,
    NoSignChangeError,
    OracleRangeError,
    PreconditionError,
)
from src.logger import get_logger, setup_logger
from src.utils import exponent_tuples, is_prime, make_rng


def _run(capsys, *argv: str):
    code = main(list(argv))
    return code, capsys.readouterr().out


def _csv_rows(text: str):
    return list(csv.DictReader(io.StringIO(text)))


class TestConfiguration:
    def test_defaults(self) -> None:
        with patch.dict("os.environ", {}, clear=True):
            settings = Settings()
            assert settings.seed == DEFAULT_SEED
            assert settings.residual_tol == 1e-9
            assert settings.root_tol == 1e-12
            assert settings.max_exp == 15
            assert settings.output_format is None

    def test_environment_seed(self) -> None:
        with patch.dict("os.environ", {"ADG_SEED": "7", "ADG_MAX_EXP": "20"}):
            settings = Settings()
            assert settings.seed == 7
            assert settings.max_exp == 20

    def test_overrides_win_and_none_is_ignored(self) -> None:
        with patch.dict("os.environ", {"ADG_SEED": "7"}):
            assert load_settings(seed=3).seed == 3
            assert load_settings(seed=None).seed == 7

    def test_invalid_values(self) -> None:
        with patch.dict("os.environ", {"ADG_RESIDUAL_TOL": "-1"}):
            with pytest.raises(ConfigurationError, match="residual_tol"):
                load_settings()

    def test_cached_default(self) -> None:
        assert get_settings() is get_settings()


class TestErrors:
    @pytest.mark.parametrize(
        "error, code",
        [
            (ConfigurationError, 2),
            (PreconditionError, 2),
            (DomainError, 2),
            (OracleRangeError, 2),
            (NoSignChangeError, 3),
            (ClosureError, 3),
        ],
    )
    def test_exit_codes(self, error, code: int) -> None:
        assert issubclass(error, AdgError)
        assert error.exit_code == code

    def test_builtin_bases(self) -> None:
        assert issubclass(PreconditionError, ValueError)
        assert issubclass(NoSignChangeError, ArithmeticError)


class TestUtils:
    def test_is_prime(self) -> None:
        assert [q for q in range(15) if is_prime(q)] == [2, 3, 5, 7, 11, 13]

    def test_exponent_tuples(self) -> None:
        pairs = list(exponent_tuples(2))
        assert len(pairs) == 16
        assert pairs[0].exponents == (1, 1, 1, 1)
        assert pairs[-1].exponents == (2, 2, 2, 2)

    def test_rng_streams(self) -> None:
        assert make_rng(1).uniform() == make_rng(1).uniform()
        assert make_rng(1, stream=0).uniform() != make_rng(1, stream=1).uniform()


class TestLogger:
    def test_module_name_and_level(self) -> None:
        sink = io.StringIO()
        setup_logger("warning", sink=sink)
        try:
            log = get_logger("delta")
            log.info("hidden")
            log.warning("shown")
        finally:
            setup_logger("WARNING")
        text = sink.getvalue()
        assert "hidden" not in text
        assert "WARNING" in text
        assert "| delta:test_module_name_and_level:" in text
        assert "\x1b[" not in text


class TestClassifyCommand:
    def test_json_record(self, capsys) -> None:
        code, out = _run(capsys, "classify", "1", "1", "1", "2")
        assert code == 0
        assert json.loads(out) == {
            "s": 1,
            "t": 1,
            "u": 1,
            "v": 2,
            "girth": 8,
            "case": "P3d",
            "canonical": "k=0 n=1",
            "chain": "",
        }

    def test_chain_labels(self, capsys) -> None:
        _, out = _run(capsys, "classify", "3", "1", "3", "2")
        assert json.loads(out)["chain"] == "L5(m=1)"

    def test_csv_format(self, capsys) -> None:
        code, out = _run(capsys, "classify", "2", "1", "1", "2", "--format", "csv")
        assert code == 0
        assert _csv_rows(out) == [
            {
                "s": "2",
                "t": "1",
                "u": "1",
                "v": "2",
                "girth": "4",
                "case": "P1",
                "canonical": "",
                "chain": "",
            }
        ]

    @pytest.mark.parametrize(
        "argv", [("0", "1", "1", "1"), ("16", "1", "1", "1")]
    )
    def test_invalid_exponents(self, capsys, argv) -> None:
        code, out = _run(capsys, "classify", *argv)
        assert code == 2
        assert out == ""

    def test_raised_cap(self, capsys) -> None:
        code, _ = _run(capsys, "classify", "16", "1", "1", "1", "--max-exp", "20")
        assert code == 0

    def test_invalid_tolerance(self, capsys) -> None:
        code, _ = _run(capsys, "classify", "1", "1", "1", "2", "--tol", "-1")
        assert code == 2


class TestTableCommand:
    def test_rows(self, capsys) -> None:
        code, out = _run(capsys, "table", "2")
        assert code == 0
        assert out.splitlines()[0] == "s,t,u,v,girth,case,canonical"
        rows = _csv_rows(out)
        assert len(rows) == 16
        assert rows[0]["case"] == "P2c"
        assert "\r" not in out

    def test_girth8_count(self, capsys) -> None:
        _, out = _run(capsys, "table", "6")
        assert sum(row["girth"] == "8" for row in _csv_rows(out)) == 72


class TestWitnessCommands:
    def test_witness_and_verify_round_trip(self, capsys, tmp_path: Path) -> None:
        code, out = _run(capsys, "witness", "1", "1", "3", "2")
        assert code == 0
        record = json.loads(out)
        assert record["report"]["passed"]
        assert record["witness"]["cycle_length"] == 6
        assert record["witness"]["equation"]["label"] == "D_prop6"

        path = tmp_path / "witness.json"
        path.write_text(out)
        code, out = _run(capsys, "verify", str(path))
        assert code == 0
        assert json.loads(out)["passed"]

    def test_verify_from_stdin(self, capsys, monkeypatch) -> None:
        _, out = _run(capsys, "witness", "2", "1", "1", "2")
        witness = json.loads(out)["witness"]
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(witness)))
        code, out = _run(capsys, "verify", "-")
        assert code == 0
        assert json.loads(out)["cycle_length"] == 4

    def test_verify_detects_tampering(self, capsys, tmp_path: Path) -> None:
        _, out = _run(capsys, "witness", "1", "1", "1", "2")
        record = json.loads(out)
        record["witness"]["vertices"][0]["coords"][1] += 1e-3
        path = tmp_path / "tampered.json"
        path.write_text(json.dumps(record))
        code, out = _run(capsys, "verify", str(path))
        assert code == 3
        assert not json.loads(out)["passed"]

    def test_certify8(self, capsys) -> None:
        code, out = _run(capsys, "certify8", "1", "1", "1", "2", "--trials", "10")
        assert code == 0
        record = json.loads(out)
        assert record["passed"]
        assert record["no_4cycle"]
        assert (record["k"], record["n"]) == (0, 1)
        assert record["monotonicity"]["passed"]

    def test_certify8_rejects_girth6(self, capsys) -> None:
        code, _ = _run(capsys, "certify8", "1", "3", "1", "2")
        assert code == 2

    def test_doubling_limit_from_environment(self, capsys) -> None:
        with patch.dict("os.environ", {"ADG_MAX_DOUBLINGS": "4"}):
            code, out = _run(capsys, "witness", "1", "1", "3", "2")
        assert code == 3
        assert out == ""
        code, _ = _run(capsys, "witness", "1", "1", "3", "2")
        assert code == 0

    def test_large_exponent_witness(self, capsys) -> None:
        code, out = _run(capsys, "witness", "1", "1", "2", "15")
        assert code == 0
        assert json.loads(out)["report"]["passed"]

    @pytest.mark.parametrize(
        "argv",
        [
            ("witness", "2", "1", "1", "2"),
            ("certify8", "1", "1", "1", "2", "--trials", "5"),
        ],
    )
    def test_json_only_commands_reject_csv(self, capsys, argv) -> None:
        code, out = _run(capsys, *argv, "--format", "csv")
        assert code == 2
        assert out == ""

    def test_verify_rejects_csv(self, capsys, tmp_path: Path) -> None:
        _, out = _run(capsys, "witness", "2", "1", "1", "2")
        path = tmp_path / "witness.json"
        path.write_text(out)
        code, out = _run(capsys, "verify", str(path), "--format", "csv")
        assert code == 2
        assert out == ""


class TestOracleCommand:
    def test_sweep(self, capsys) -> None:
        code, out = _run(capsys, "oracle", "3", "2")
        assert code == 0
        rows = _csv_rows(out)
        assert len(rows) == 16
        assert all(row["agree"] == "1" for row in rows)

    def test_rejects_composite_q(self, capsys) -> None:
        code, out = _run(capsys, "oracle", "4", "2")
        assert code == 2
        assert out == ""


class TestCurveCommand:
    def test_prop4_includes_anchor(self, capsys) -> None:
        code, out = _run(
            capsys, "curve", "4", "--k", "1", "--n", "1", "--lo", "-3", "--hi", "0"
        )
        assert code == 0
        rows = _csv_rows(out)
        assert len(rows) == 301
        assert (float(rows[-1]["x"]), float(rows[-1]["D"])) == (0.0, -2.0)
        assert sum(int(row["sign_change"]) for row in rows) == 1

    def test_prop6_spurious_point(self, capsys) -> None:
        _, out = _run(
            capsys,
            "curve", "6", "--m", "1", "--lo", "0.5", "--hi", "1.5", "--steps", "2",
        )
        values = {float(row["x"]): float(row["D"]) for row in _csv_rows(out)}
        assert values[1.0] == 0.0
        assert values[0.5] > 0 > values[1.5]

    def test_prop5_domain(self, capsys) -> None:
        code, _ = _run(
            capsys, "curve", "5", "--j", "1", "--lo", "-2", "--hi", "1"
        )
        assert code == 2


class TestDeterminism:
    def test_certificate_output_is_byte_identical(self, capsys) -> None:
        _, first = _run(capsys, "certify8", "1", "3", "1", "4", "--seed", "11")
        _, second = _run(capsys, "certify8", "1", "3", "1", "4", "--seed", "11")
        assert first == second

    def test_seed_from_environment(self, capsys) -> None:
        with patch.dict("os.environ", {"ADG_SEED": "11"}):
            _, from_env = _run(capsys, "certify8", "1", "3", "1", "4")
        _, from_flag = _run(capsys, "certify8", "1", "3", "1", "4", "--seed", "11")
        assert from_env == from_flag
        assert json.loads(from_flag)["seed"] == 11

    def test_witness_output_is_byte_identical(self, capsys) -> None:
        _, first = _run(capsys, "witness", "1", "1", "5", "4")
        _, second = _run(capsys, "witness", "1", "1", "5", "4")
        assert first == second
