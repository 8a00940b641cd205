import csv
import json

from corridor_forge.cli import main
from corridor_forge.complexes import boundary_corridor
from corridor_forge.serialize import save_complex


def _run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


class TestGenerate:
    def test_corridor_with_trajectory(self, tmp_path):
        out = tmp_path / "run.json"
        code = main(
            [
                "generate-corridor",
                "--n", "40", "--d", "2", "--seed", "1",
                "--record-every", "25",
                "--out", str(out),
            ]
        )
        assert code == 0
        obj = json.loads(out.read_text())
        assert obj["mode"] == "corridor"
        traj = tmp_path / "run.trajectory.csv"
        assert traj.exists()
        with open(traj, newline="") as fh:
            header = next(csv.reader(fh))
        assert header[0] == "step" and "W_6" in header

    def test_pm(self, tmp_path):
        out = tmp_path / "pm.json"
        code = main(
            ["generate-pm", "--n", "40", "--d", "2", "--seed", "1", "--out", str(out)]
        )
        assert code == 0
        obj = json.loads(out.read_text())
        assert obj["mode"] == "pm"
        assert obj["pseudomanifold"] is True

    def test_invalid_params_exit_code(self, capsys):
        code, captured = _run(
            capsys, ["generate-corridor", "--n", "5", "--d", "2", "--seed", "0"]
        )
        assert code == 1
        assert "error:" in captured.err


class TestAnalyzeHomology:
    def test_analyze(self, tmp_path, capsys):
        path = tmp_path / "sphere.json"
        save_complex(boundary_corridor(2, 6), str(path))
        code, captured = _run(capsys, ["analyze", str(path)])
        assert code == 0
        obj = json.loads(captured.out)
        assert obj["diameter"] == 3
        assert obj["connectivity"] == 3
        assert obj["pseudomanifold"] is True
        assert obj["f_vector"] == [6, 12, 8]

    def test_homology(self, tmp_path, capsys):
        path = tmp_path / "sphere.json"
        save_complex(boundary_corridor(2, 6), str(path))
        code, captured = _run(capsys, ["homology", str(path)])
        assert code == 0
        assert json.loads(captured.out)["betti"] == [0, 0, 1]


class TestBoundsOracle:
    def test_bounds_json(self, capsys):
        code, captured = _run(capsys, ["bounds", "--n", "10", "20", "--d", "2"])
        assert code == 0
        rows = json.loads(captured.out)
        assert len(rows) == 2
        assert rows[0]["hs_exact"] == 21.0

    def test_bounds_csv(self, capsys):
        code, captured = _run(
            capsys, ["bounds", "--n", "10", "--d", "2", "--format", "csv"]
        )
        assert code == 0
        assert captured.out.splitlines()[0].startswith("n,d,hs_exact")

    def test_johnson_oracle(self, capsys):
        code, captured = _run(capsys, ["johnson-oracle", "--n", "5", "--d", "2"])
        assert code == 0
        assert json.loads(captured.out)["longest_induced_path"] == 3

    def test_johnson_oracle_refused(self, capsys):
        code, captured = _run(capsys, ["johnson-oracle", "--n", "8", "--d", "2"])
        assert code == 1


class TestExperiment:
    def test_tiny_grid(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("CORRIDOR_FORGE_THREADS", "1")
        spec = tmp_path / "spec.json"
        spec.write_text(
            json.dumps({"mode": "corridor", "n": [30], "d": [2], "seeds": [1, 2]})
        )
        out_dir = tmp_path / "runs"
        code, captured = _run(
            capsys, ["experiment", "--spec", str(spec), "--out-dir", str(out_dir)]
        )
        assert code == 0
        assert (out_dir / "summary.csv").exists()
        assert (out_dir / "corridor_n30_d2_seed1.json").exists()
        assert (out_dir / "corridor_n30_d2_seed2.json").exists()
        with open(out_dir / "summary.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 1
        assert float(rows[0]["ratio"]) <= 1.0
