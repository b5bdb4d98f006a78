import json

import pytest

from zetabounds import cli
from zetabounds.errors import DomainError


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBounds:
    def test_eval_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "eval", "--t0", "28.2694", "--sigma", "0.6", "--u", "12"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["omega1"] > payload["omega2"] - payload["omega"]
        assert payload["omega1"] == pytest.approx(0.639433, abs=1e-5)
        assert payload["omega2"] == pytest.approx(0.662773, abs=1e-5)

    def test_mertens_row(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "bounds",
            "mertens",
            "--sigma0",
            "0.5805",
            "--t0",
            "38.0820263",
            "--u0",
            "10.472",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["n1"] == pytest.approx(0.516044, abs=1e-5)
        assert payload["alpha"] == pytest.approx(0.998969, abs=1e-5)

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run_cli(
            capsys, "bounds", "eval", "--t0", "10", "--sigma", "0.6", "--u", "12"
        )
        assert code == 3
        assert "violated" in err


class TestUsage:
    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["bounds", "eval", "--nope", "1"])
        assert exc.value.code == 64

    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["tables"])
        assert exc.value.code == 64


class TestCheckpointParser:
    def test_comma_list(self):
        assert cli.parse_checkpoints("10,100,1000") == [10, 100, 1000]

    def test_power_range(self):
        assert cli.parse_checkpoints("10^1..10^4 step *10") == [10, 100, 1000, 10000]

    def test_rejects_garbage(self):
        with pytest.raises(DomainError):
            cli.parse_checkpoints("ten,twenty")


class TestSieve:
    def test_small_run(self, capsys):
        code, out, _ = run_cli(
            capsys, "sieve", "--limit", "100", "--checkpoints", "10,100"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "x,mertens,m_weighted"
        assert lines[1].split(",")[:2] == ["10", "-1"]
        assert lines[2].split(",")[:2] == ["100", "1"]

    def test_qk_columns(self, capsys):
        code, out, _ = run_cli(
            capsys, "sieve", "--limit", "100", "--checkpoints", "100", "--qk", "2,3"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "x,mertens,m_weighted,q2,q3"
        assert lines[1].split(",")[3:] == ["61", "85"]


class TestVerify:
    def test_recip_smoke(self, capsys, tmp_path):
        out_file = tmp_path / "scan.csv"
        code, _, _ = run_cli(
            capsys,
            "verify",
            "recip-lemma",
            "--strips",
            "0,1..5",
            "--output",
            str(out_file),
        )
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert len(lines) == 7

    def test_logzeta_samples(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "logzeta-identity", "--samples", "2", "--seed", "5"
        )
        assert code == 0
        assert out.startswith("re_s,im_s,lhs,rhs,gap,budget")


class TestPerron:
    def test_report(self, capsys):
        code, out, _ = run_cli(capsys, "perron", "--x", "50.5")
        assert code == 0
        assert out.startswith("x,sigma,T,")


class TestTables:
    def test_single_target_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "tables", "reproduce", "--which", "mertens", "--targets", "0.999"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "u0,sigma0,t0,attained,coeff,exponent10"
        fields = lines[1].split(",")
        assert float(fields[0]) == pytest.approx(10.472, abs=1e-6)
        assert float(fields[1]) == 0.5805

    def test_publish_formatting(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "tables",
            "reproduce",
            "--which",
            "mertens",
            "--targets",
            "0.999",
            "--publish",
        )
        assert code == 0
        assert out.strip().split("\n")[1] == "0.999,0.517,4.487"

    def test_byte_identical_reruns(self, capsys):
        _, first, _ = run_cli(
            capsys, "tables", "reproduce", "--which", "kfree", "--targets", "0.4999"
        )
        _, second, _ = run_cli(
            capsys, "tables", "reproduce", "--which", "kfree", "--targets", "0.4999"
        )
        assert first == second
