import json
import math
import os

import pytest

from amplearn.cli import main, validate_config


def write_config(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def read_csv(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


class TestValidateConfig:
    def test_defaults_filled(self):
        cfg, errors, _ = validate_config("grover", {"n": 4, "tau": 1, "rounds": 3})
        assert not errors and cfg["seed"] == 0

    def test_unknown_field_rejected(self):
        _, errors, _ = validate_config("grover", {"n": 4, "tau": 1, "rounds": 3, "x": 1})
        assert any("unknown field" in e for e in errors)

    def test_missing_required(self):
        _, errors, _ = validate_config("grover", {"n": 4})
        assert any("missing required" in e for e in errors)

    def test_type_checked(self):
        _, errors, _ = validate_config("grover", {"n": "four", "tau": 1, "rounds": 3})
        assert any("must be int" in e for e in errors)

    def test_tau_range(self):
        _, errors, _ = validate_config("grover", {"n": 2, "tau": 4, "rounds": 1})
        assert any("'tau'" in e for e in errors)

    def test_epsilon_warning(self):
        _, errors, warns = validate_config(
            "bounds", {"n": 4, "gates": 8, "epsilon": 0.5}
        )
        assert not errors and any("epsilon" in w for w in warns)


class TestRun:
    def test_grover_csv(self, tmp_path):
        cfg = write_config(tmp_path, "g.json", {"n": 4, "tau": 3, "rounds": 5, "seed": 7})
        assert main(["grover", "--config", cfg, "--out", str(tmp_path)]) == 0
        csv = read_csv(tmp_path / "grover_7.csv")
        lines = csv.strip().split("\n")
        assert lines[0].startswith("# amplearn v")
        assert lines[1] == "n,tau,round,success,queries"
        assert len(lines) == 2 + 6  # rounds 0..5

    def test_determinism(self, tmp_path):
        cfg = write_config(
            tmp_path, "d.json", {"dim": 4, "k": 3, "copies": [1, 2], "trials": 500}
        )
        for sub in ("a", "b"):
            os.makedirs(tmp_path / sub, exist_ok=True)
            assert main(["discriminate", "--config", cfg, "--out", str(tmp_path / sub)]) == 0
        a = (tmp_path / "a" / "discriminate_0.csv").read_bytes()
        b = (tmp_path / "b" / "discriminate_0.csv").read_bytes()
        assert a == b

    def test_seed_flag_overrides(self, tmp_path):
        cfg = write_config(tmp_path, "g.json", {"n": 3, "tau": 0, "rounds": 2, "seed": 1})
        assert main(["grover", "--config", cfg, "--seed", "9", "--out", str(tmp_path)]) == 0
        assert (tmp_path / "grover_9.csv").exists()

    def test_malformed_config_no_files(self, tmp_path):
        cfg = write_config(tmp_path, "bad.json", {"n": 4, "tau": 1, "rounds": 2, "x": 0})
        out = tmp_path / "out"
        assert main(["grover", "--config", cfg, "--out", str(out)]) != 0
        assert not out.exists()

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        assert main(["grover", "--config", str(path), "--out", str(tmp_path)]) != 0

    def test_unknown_subcommand(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["frobnicate", "--config", "x.json"])

    def test_amplify_learn_sidecar(self, tmp_path):
        cfg = write_config(tmp_path, "al.json", {"n": 8, "tau": 3})
        assert main(["amplify-learn", "--config", cfg, "--out", str(tmp_path)]) == 0
        sidecar = json.loads((tmp_path / "amplify_learn_0.json").read_text())
        summary = sidecar["summary"]
        assert summary["oracle_queries"] == summary["training_queries"] + summary["rounds"]

    def test_exact_flag_forces_ideal(self, tmp_path):
        cfg = write_config(
            tmp_path,
            "al.json",
            {"n": 4, "tau": 1, "mode": "variational", "samples_per_round": 10},
        )
        assert main(
            ["amplify-learn", "--config", cfg, "--out", str(tmp_path), "--exact"]
        ) == 0
        csv = read_csv(tmp_path / "amplify_learn_0.csv")
        # ideal mode reports fidelity exactly 1.0 on every learn phase
        for line in csv.strip().split("\n")[3:]:
            assert line.split(",")[3] == "1.0"

    def test_signal_magic_demo(self, tmp_path):
        cfg = write_config(tmp_path, "s.json", {"n": 1, "program": "magic-demo"})
        assert main(["signal", "--config", cfg, "--out", str(tmp_path)]) == 0
        row = read_csv(tmp_path / "signal_0.csv").strip().split("\n")[2].split(",")
        assert float(row[3]) == 1.0 and float(row[4]) == 1.0

    def test_bounds_rows(self, tmp_path):
        cfg = write_config(tmp_path, "b.json", {"n": 4, "gates": 8})
        assert main(["bounds", "--config", cfg, "--out", str(tmp_path)]) == 0
        csv = read_csv(tmp_path / "bounds_0.csv")
        assert "sample_lower_bound" in csv and "g_univ_floor" in csv

    def test_pack_rows(self, tmp_path):
        cfg = write_config(tmp_path, "p.json", {"dim": 4, "separation": 0.5, "pool": 200})
        assert main(["pack", "--config", cfg, "--out", str(tmp_path)]) == 0
        sidecar = json.loads((tmp_path / "pack_0.json").read_text())
        assert sidecar["summary"]["size"] >= 2

    def test_triangle_rows(self, tmp_path):
        cfg = write_config(tmp_path, "t.json", {"n_min": 4, "n_max": 6})
        assert main(["triangle", "--config", cfg, "--out", str(tmp_path)]) == 0
        lines = read_csv(tmp_path / "triangle_0.csv").strip().split("\n")
        assert len(lines) == 2 + 3
        first = lines[2].split(",")
        assert float(first[3]) == math.sqrt(16)

    def test_out_env_var(self, tmp_path, monkeypatch):
        cfg = write_config(tmp_path, "g.json", {"n": 3, "tau": 0, "rounds": 1})
        target = tmp_path / "envout"
        monkeypatch.setenv("AMPLEARN_OUT", str(target))
        assert main(["grover", "--config", cfg]) == 0
        assert (target / "grover_0.csv").exists()


class TestValidateSubcommand:
    def test_valid_file(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, "v.json", {"subcommand": "grover", "n": 4, "tau": 1, "rounds": 2}
        )
        assert main(["validate", cfg]) == 0
        assert capsys.readouterr().out == ""

    def test_missing_field_listed(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "v.json", {"subcommand": "grover", "n": 4})
        assert main(["validate", cfg]) == 1
        out = capsys.readouterr().out
        assert "'tau'" in out and "'rounds'" in out

    def test_epsilon_warning_exit_zero(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path, "v.json", {"subcommand": "bounds", "n": 4, "gates": 8, "epsilon": 0.5}
        )
        assert main(["validate", cfg]) == 0
        assert "warning" in capsys.readouterr().out

    def test_for_flag(self, tmp_path):
        cfg = write_config(tmp_path, "v.json", {"n": 4, "tau": 1, "rounds": 2})
        assert main(["validate", cfg, "--for", "grover"]) == 0

    def test_unreadable(self, tmp_path):
        assert main(["validate", str(tmp_path / "missing.json")]) == 2
