"""Command-line surface: subcommands, formats, exit codes."""

import json

import pytest

from cosetstore import cli
from cosetstore.codes import augmented_hr_code, format_parity_check
from cosetstore.graphbounds import format_edge_list, torus_graph


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestRate:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "rate", "--family", "repetition:5")
        assert code == 0
        assert "rate: 10/16 (= 5/8)" in out

    def test_json_roundtrip_byte_identical(self, capsys):
        code, out, _ = run(capsys, "rate", "--family", "bch2:4",
                           "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["rate_reduced"] == "39/64"
        assert cli.emit_json(obj) == out

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "H.txt"
        path.write_text(format_parity_check(augmented_hr_code(4).H))
        code, out, _ = run(capsys, "rate", "--file", str(path))
        assert code == 0
        assert "rate: 22/32 (= 11/16)" in out

    def test_plain_flag(self, capsys):
        code, out, _ = run(capsys, "rate", "--family", "repetition:5",
                           "--plain", "--format", "json")
        assert code == 0
        assert json.loads(out)["accelerated"] is False

    def test_missing_source(self, capsys):
        code, _, err = run(capsys, "rate")
        assert code == 2
        assert "family" in err

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "rate", "--family", "turbo:3")
        assert code == 2

    def test_bad_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n101\n")
        assert run(capsys, "rate", "--file", str(path))[0] == 2

    def test_capacity_exit_code(self, capsys):
        code, _, err = run(capsys, "rate", "--family", "bch2:14")
        assert code == 3

    def test_mem_budget_exit_code(self, capsys):
        code, _, _ = run(capsys, "rate", "--family", "bch2:6",
                         "--mem-budget", "4096")
        assert code == 3


class TestCheck:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "check", "--family", "repetition:5")
        assert code == 0
        assert "pass: True" in out
        assert "bounds: 1/2 <= 5/8 <= 11/16" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "check", "--family", "bch2:4",
                           "--format", "json", "--kmax", "2")
        assert code == 0
        obj = json.loads(out)
        assert obj["rank_bound_ok"] is True
        assert obj["conditions"]["pass"] is True


class TestReproduce:
    def test_subset_text(self, capsys):
        code, out, _ = run(capsys, "reproduce", "--families",
                           "repetition:5,golay")
        assert code == 0
        assert "all_match: True" in out
        assert "1312/2048" in out

    def test_subset_csv(self, capsys):
        code, out, _ = run(capsys, "reproduce", "--families",
                           "repetition:7,augmented:4", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("id,family,")
        assert len(lines) == 3

    def test_json(self, capsys):
        code, out, _ = run(capsys, "reproduce", "--families", "augmented:4",
                           "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["all_match"] is True
        assert obj["rows"][0]["closed_form_match"] is True

    def test_mismatch_exit_code(self, capsys, monkeypatch):
        rows = [dict(r) for r in cli.REPRODUCE_ROWS if r["id"] == "golay"]
        rows[0]["K"] = 1  # corrupt the expectation
        monkeypatch.setattr(cli, "REPRODUCE_ROWS", rows)
        code, out, _ = run(capsys, "reproduce")
        assert code == 1
        assert "MISMATCH" in out


class TestSimulate:
    def test_threshold_only(self, capsys):
        code, out, _ = run(capsys, "simulate", "--family", "repetition:5",
                           "--t", "2", "--trials", "0")
        assert code == 0
        assert "threshold: -1/5" in out
        assert "guarantee: False" in out

    def test_cayley_with_guarantee(self, capsys):
        code, out, _ = run(capsys, "simulate", "--family", "repetition:5",
                           "--t", "4", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["lambda"] == 3
        assert obj["mixing_check"]["failures"] == 0

    def test_torus_pc(self, capsys):
        code, out, _ = run(capsys, "simulate", "--torus", "4x4", "--t", "3",
                           "--trials", "0", "--pc-trials", "150",
                           "--seed", "7", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert obj["d"] == 4
        assert obj["seed"] == 7
        assert 0.0 <= obj["pc"]["p_low"] <= obj["pc"]["p_high"] <= 1.0

    def test_pc_csv(self, capsys):
        code, out, _ = run(capsys, "simulate", "--torus", "3x3", "--t", "3",
                           "--trials", "0", "--pc-trials", "120",
                           "--format", "csv")
        assert code == 0
        assert out.startswith("p,trials,successes,")

    def test_edges_file(self, capsys, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text(format_edge_list(torus_graph(3, 3)))
        code, out, _ = run(capsys, "simulate", "--edges", str(path),
                           "--t", "1", "--trials", "0")
        assert code == 0
        assert "d: 4" in out

    def test_non_regular_rejected(self, capsys, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("3 2\n0 1\n1 2\n")
        assert run(capsys, "simulate", "--edges", str(path), "--t", "1")[0] == 2

    def test_bad_t(self, capsys):
        assert run(capsys, "simulate", "--family", "repetition:5",
                   "--t", "9")[0] == 2


class TestSpectrum:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--family", "repetition:5")
        assert code == 0
        assert "degree: 5" in out
        assert "lambda: 3" in out

    def test_histogram_sums_to_n(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--family", "exthamming:3",
                           "--histogram", "--format", "json")
        assert code == 0
        obj = json.loads(out)
        assert sum(obj["histogram"].values()) == obj["N"]
        assert obj["lambda"] == obj["degree"]  # bipartite


def test_seed_recorded(capsys):
    code, out, _ = run(capsys, "simulate", "--family", "repetition:5",
                       "--t", "4", "--seed", "42", "--format", "json")
    assert code == 0
    assert json.loads(out)["seed"] == 42


def test_requires_subcommand(capsys):
    with pytest.raises(SystemExit):
        cli.main([])
