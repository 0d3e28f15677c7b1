"""Tests for the command-line interface."""

import json
import logging
from pathlib import Path

import pytest
from click.testing import CliRunner

from fhe_keygen import __version__
from fhe_keygen.cli.main import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def _restore_root_logger():
    root = logging.getLogger()
    saved = (root.level, list(root.handlers))
    yield
    root.handlers[:] = saved[1]
    root.setLevel(saved[0])


VERIFY = ["verify", "--key", "key.txt", "--generator", "v.txt"]


def generate(runner, *extra):
    return runner.invoke(
        cli, ["keygen", "--algo", "ours", "--n", "8", "--t", "8", "--seed", "3", *extra]
    )


class TestKeygen:
    def test_stdout_and_determinism(self, runner):
        args = ["keygen", "--algo", "gh", "--n", "8", "--t", "8", "--seed", "42"]
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)
        assert first.exit_code == 0, first.output
        assert first.output == second.output
        keys = [line.split("=")[0] for line in first.output.splitlines()]
        assert keys == ["n", "d", "r", "w", "i", "seed"]
        assert "seed=42" in first.output

    def test_files_then_verify(self, runner):
        with runner.isolated_filesystem():
            result = generate(
                runner,
                "--out",
                "key.txt",
                "--public-out",
                "key.pub",
                "--generator-out",
                "v.txt",
            )
            assert result.exit_code == 0, result.output
            assert "w=" not in Path("key.pub").read_text()
            assert len(Path("v.txt").read_text().splitlines()) == 8

            verified = runner.invoke(cli, VERIFY)
            assert verified.exit_code == 0, verified.output
            assert "Key is valid" in verified.output

    def test_tampered_key_fails(self, runner):
        with runner.isolated_filesystem():
            generate(runner, "--out", "key.txt", "--generator-out", "v.txt")
            lines = Path("key.txt").read_text().splitlines()
            tampered = []
            for line in lines:
                if line.startswith("w="):
                    line = f"w={int(line[2:]) + 2}"
                tampered.append(line)
            Path("key.txt").write_text("\n".join(tampered) + "\n")

            result = runner.invoke(cli, VERIFY)
            assert result.exit_code == 1
            assert "w_congruence FAILED" in result.output

    def test_invalid_dimension_is_usage_error(self, runner):
        result = runner.invoke(cli, ["keygen", "--algo", "gh", "--n", "6", "--t", "8"])
        assert result.exit_code == 2

    def test_unknown_algorithm(self, runner):
        result = runner.invoke(cli, ["keygen", "--algo", "sv", "--n", "8", "--t", "8"])
        assert result.exit_code == 2


class TestVerifyInput:
    def test_malformed_key_file(self, runner):
        with runner.isolated_filesystem():
            Path("key.txt").write_text("n=2\nd=five\n")
            Path("v.txt").write_text("2\n1\n")
            result = runner.invoke(cli, VERIFY)
            assert result.exit_code == 2
            assert "line 2" in result.output

    def test_public_key_cannot_be_verified(self, runner):
        with runner.isolated_filesystem():
            Path("key.pub").write_text("n=2\nd=5\nr=3\nseed=7\n")
            Path("v.txt").write_text("2\n1\n")
            result = runner.invoke(
                cli, ["verify", "--key", "key.pub", "--generator", "v.txt"]
            )
            assert result.exit_code == 2

    def test_worked_key(self, runner):
        with runner.isolated_filesystem():
            Path("key.txt").write_text("n=2\nd=5\nr=3\nw=-3\ni=0\nseed=7\n")
            Path("v.txt").write_text("[2, 1]\n")
            result = runner.invoke(cli, VERIFY)
            assert result.exit_code == 0, result.output

    def test_generator_too_long(self, runner):
        with runner.isolated_filesystem():
            Path("key.txt").write_text("n=2\nd=5\nr=3\nw=-3\ni=0\nseed=7\n")
            Path("v.txt").write_text("[2, 1, 1]\n")
            result = runner.invoke(cli, VERIFY)
            assert result.exit_code == 2

    def test_generator_not_utf8(self, runner):
        with runner.isolated_filesystem():
            Path("key.txt").write_text("n=2\nd=5\nr=3\nw=-3\ni=0\nseed=7\n")
            Path("v.txt").write_bytes(b"\xff\xfe")
            result = runner.invoke(cli, VERIFY)
            assert result.exit_code == 2
            assert "not UTF-8" in result.output


class TestReports:
    def test_experiment_json(self, runner):
        result = runner.invoke(
            cli,
            ["experiment", "--n", "16", "--t", "8", "--trials", "50", "--seed", "1"],
        )
        assert result.exit_code == 0, result.output
        data = json.loads(result.output)
        assert data["experiment"] == "categories"
        for row in data["results"]:
            cells = ("even_shnf", "even_non", "odd_shnf", "odd_non")
            assert sum(row[cell] for cell in cells) == 50
        ours = next(row for row in data["results"] if row["algo"] == "ours")
        assert ours["odd_shnf"] + ours["odd_non"] == 50

    def test_experiment_to_file(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(
                cli,
                [
                    "experiment",
                    "--n",
                    "8",
                    "--t",
                    "4",
                    "--trials",
                    "10",
                    "--format",
                    "csv",
                    "--out",
                    "cat.csv",
                ],
            )
            assert result.exit_code == 0, result.output
            assert Path("cat.csv").read_text().startswith("algo,n,t,trials,")

    def test_bench_csv(self, runner):
        result = runner.invoke(
            cli, ["bench", "--n", "8", "--t", "8", "--keys", "2", "--format", "csv"]
        )
        assert result.exit_code == 0, result.output
        lines = result.output.splitlines()
        assert lines[0] == (
            "algo,n,t,keys,trials,t_res,t_xgcd,t_pmod,t_mul,t_oddcoe,t_total,speedup"
        )
        assert [line.split(",")[0] for line in lines[1:3]] == ["gh", "ours"]

    def test_experiment_bad_trials(self, runner):
        result = runner.invoke(
            cli, ["experiment", "--n", "8", "--t", "4", "--trials", "-1"]
        )
        assert result.exit_code == 2


class TestHnfCommand:
    def test_prints_hnf(self, runner):
        with runner.isolated_filesystem():
            Path("m.json").write_text("[[2, 1], [-1, 2]]")
            result = runner.invoke(cli, ["hnf", "--matrix", "m.json"])
            assert result.exit_code == 0, result.output
            assert result.output.splitlines()[0] == '[["5", "0"], ["2", "1"]]'
            assert "determinant: 5" in result.output
            assert "simple HNF: yes" in result.output
            assert "divisibility structure: yes" in result.output

    def test_singular(self, runner):
        with runner.isolated_filesystem():
            Path("m.json").write_text("[[1, 2], [2, 4]]")
            result = runner.invoke(cli, ["hnf", "--matrix", "m.json"])
            assert result.exit_code == 1

    def test_malformed(self, runner):
        with runner.isolated_filesystem():
            Path("m.json").write_text("[[1, 2]]")
            result = runner.invoke(cli, ["hnf", "--matrix", "m.json"])
            assert result.exit_code == 2

    def test_matrix_not_utf8(self, runner):
        with runner.isolated_filesystem():
            Path("m.json").write_bytes(b"\xff\xfe[[1]]")
            result = runner.invoke(cli, ["hnf", "--matrix", "m.json"])
            assert result.exit_code == 2


class TestGlobalOptions:
    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "fhe-keygen" in result.output
        assert __version__ in result.output

    def test_invalid_config(self, runner):
        with runner.isolated_filesystem():
            Path("bad.yml").write_text("keygen:\n  max_retries: 0\n")
            args = ["keygen", "--algo", "gh", "--n", "8", "--t", "8"]
            result = runner.invoke(cli, ["--config", "bad.yml", *args])
            assert result.exit_code == 2
            assert "Invalid configuration" in result.output

    def test_missing_config(self, runner):
        with runner.isolated_filesystem():
            result = runner.invoke(
                cli, ["--config", "absent.yml", "experiment", "--n", "8", "--t", "4"]
            )
            assert result.exit_code == 2

    def test_config_changes_defaults(self, runner):
        with runner.isolated_filesystem():
            Path("cfg.yml").write_text("keygen:\n  max_retries: 1\n")
            # with one try a 1-bit generator often has an even determinant
            results = [
                runner.invoke(
                    cli,
                    ["--config", "cfg.yml", "keygen", "--algo", "gh"]
                    + ["--n", "8", "--t", "1", "--seed", str(s)],
                )
                for s in range(10)
            ]
            assert any(r.exit_code == 1 for r in results)
            assert all(r.exit_code in (0, 1) for r in results)
