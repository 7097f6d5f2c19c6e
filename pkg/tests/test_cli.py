import json

import pytest

from noisycc import Instance, load_instance, save_instance
from noisycc.cli import CSV_COLUMNS, main

THREE_ARM = Instance(3, [0.9, 0.1, 0.55])


def run_main(argv):
    return main(argv)


def parse_csv(text):
    lines = text.strip().split("\n")
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    return header, rows


class TestGen:
    def test_planted_file(self, tmp_path):
        out = tmp_path / "inst.json"
        assert run_main([
            "gen", "--kind", "planted", "--n", "8", "--k", "2",
            "--q", "0.1", "--seed", "7", "--out", str(out),
        ]) == 0
        obj = json.loads(out.read_text())
        assert obj["n"] == 8
        assert len(obj["sims"]) == 28
        assert len(obj["ground_truth"]) == 8
        load_instance(out)  # round-trips through the validator

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["gen", "--kind", "planted", "--n", "8", "--k", "2", "--q", "0.1", "--seed", "7"]
        run_main(argv + ["--out", str(a)])
        run_main(argv + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_k_greater_than_n_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run_main(["gen", "--kind", "planted", "--n", "8", "--k", "9",
                      "--out", str(tmp_path / "x.json")])
        assert exc.value.code == 2

    def test_uniform_random_kind(self, tmp_path):
        out = tmp_path / "u.json"
        run_main(["gen", "--kind", "uniform_random", "--n", "5",
                  "--lo", "0.2", "--hi", "0.8", "--seed", "3", "--out", str(out)])
        inst = load_instance(out)
        assert inst.m == 10
        assert inst.sims.min() >= 0.2 and inst.sims.max() <= 0.8


@pytest.fixture
def noiseless_instance(tmp_path):
    path = tmp_path / "noiseless.json"
    run_main(["gen", "--kind", "planted", "--n", "6", "--k", "2",
              "--in-mean", "1.0", "--out-mean", "0.0", "--seed", "1", "--out", str(path)])
    return path


class TestRun:
    def test_kcfc_noiseless_rows(self, noiseless_instance, tmp_path, capsys):
        out = tmp_path / "res.csv"
        run_main(["run", "--algo", "kcfc", "--instance", str(noiseless_instance),
                  "--epsilon", "1.0", "--delta", "0.1", "--trials", "3",
                  "--mc-replays", "50", "--out", str(out)])
        header, rows = parse_csv(out.read_text())
        assert ",".join(header) == CSV_COLUMNS
        assert len(rows) == 3
        for row in rows:
            assert row["algo"] == "kcfc"
            assert float(row["cost"]) == 0.0
            assert row["success"] == "true"
            assert float(row["opt"]) == 0.0
            assert int(row["queries"]) > 0
            assert row["budget"] == ""
            assert row["wall_ms"] == ""

    def test_determinism_byte_identical(self, noiseless_instance, tmp_path):
        argv = ["run", "--algo", "kcfb", "--instance", str(noiseless_instance),
                "--epsilon", "0.5", "--budget", "150", "--trials", "4",
                "--mc-replays", "30", "--seed", "11"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_main(argv + ["--out", str(a)])
        run_main(argv + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_workers_do_not_change_output(self, noiseless_instance, tmp_path):
        argv = ["run", "--algo", "kcfc-seq", "--instance", str(noiseless_instance),
                "--epsilon", "1.0", "--delta", "0.1", "--trials", "4",
                "--mc-replays", "20", "--seed", "5"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_main(argv + ["--out", str(a)])
        run_main(argv + ["--workers", "3", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_kcfb_budget_too_small_usage_error(self, noiseless_instance):
        with pytest.raises(SystemExit) as exc:
            run_main(["run", "--algo", "kcfb", "--instance", str(noiseless_instance),
                      "--epsilon", "0.5", "--budget", "10"])
        assert exc.value.code == 2

    def test_missing_delta_usage_error(self, noiseless_instance):
        with pytest.raises(SystemExit) as exc:
            run_main(["run", "--algo", "kcfc", "--instance", str(noiseless_instance),
                      "--epsilon", "1.0"])
        assert exc.value.code == 2

    def test_uniform_algos(self, noiseless_instance, tmp_path):
        out = tmp_path / "u.csv"
        run_main(["run", "--algo", "uniform-fc", "--instance", str(noiseless_instance),
                  "--epsilon", "3.0", "--delta", "0.3", "--trials", "2", "--out", str(out)])
        _, rows = parse_csv(out.read_text())
        for row in rows:
            assert float(row["cost"]) == 0.0
            assert row["success"] == "true"
            assert float(row["bound_ref"]) == float(row["queries"])
        run_main(["run", "--algo", "uniform-fb", "--instance", str(noiseless_instance),
                  "--epsilon", "0.5", "--budget", "60", "--trials", "2", "--out", str(out)])
        _, rows = parse_csv(out.read_text())
        for row in rows:
            assert int(row["queries"]) == 60
            assert row["delta"] == ""

    def test_stdout_when_no_out(self, noiseless_instance, capsys):
        run_main(["run", "--algo", "kcfc", "--instance", str(noiseless_instance),
                  "--epsilon", "1.0", "--delta", "0.1", "--mc-replays", "10"])
        captured = capsys.readouterr().out
        assert captured.startswith(CSV_COLUMNS)

    def test_timing_flag_fills_wall_ms(self, noiseless_instance, tmp_path):
        out = tmp_path / "t.csv"
        run_main(["run", "--algo", "kcfc", "--instance", str(noiseless_instance),
                  "--epsilon", "1.0", "--delta", "0.1", "--mc-replays", "10",
                  "--timing", "--out", str(out)])
        _, rows = parse_csv(out.read_text())
        assert float(rows[0]["wall_ms"]) > 0.0


class TestAnalyze:
    def test_three_arm_values(self, tmp_path, capsys):
        path = tmp_path / "three.json"
        save_instance(THREE_ARM, path)
        run_main(["analyze", "--instance", str(path), "--epsilon", "0.2",
                  "--delta", "0.1", "--budget", "0"])
        out = capsys.readouterr().out
        fields = dict(
            line.split(": ", 1) for line in out.strip().split("\n") if ": " in line
        )
        assert fields["n"] == "3"
        assert fields["m"] == "3"
        assert float(fields["delta_min"]) == pytest.approx(0.05)
        tilde = json.loads(fields["tilde_gaps"])
        assert tilde == pytest.approx([0.5, 0.5, 0.15])
        assert float(fields["fb_error_bound"]) == 1.0

    def test_min_gap_at_narrow_epsilon(self, tmp_path, capsys):
        path = tmp_path / "three.json"
        save_instance(THREE_ARM, path)
        run_main(["analyze", "--instance", str(path), "--epsilon", "0.12"])
        out = capsys.readouterr().out
        fields = dict(
            line.split(": ", 1) for line in out.strip().split("\n") if ": " in line
        )
        assert float(fields["fb_min_gap"]) == pytest.approx(0.05)

    def test_n1_instance(self, tmp_path, capsys):
        path = tmp_path / "one.json"
        save_instance(Instance(1, []), path)
        run_main(["analyze", "--instance", str(path)])
        out = capsys.readouterr().out
        assert "delta_min: " in out

    def test_missing_file_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run_main(["analyze", "--instance", str(tmp_path / "absent.json")])
        assert exc.value.code == 2
