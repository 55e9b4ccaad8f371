"""End-to-end CLI runs through the click test runner (in-process service)."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from fuzzyclust import fileio
from fuzzyclust.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def gen(runner, tmp_path, scenario="two-ellipse", seed=1, name="points.csv"):
    out = tmp_path / name
    result = runner.invoke(
        main, ["generate", "--scenario", scenario, "--seed", str(seed), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    return out


class TestGenerate:
    def test_writes_labelled_csv(self, runner, tmp_path):
        out = gen(runner, tmp_path)
        text = out.read_text()
        assert text.splitlines()[0] == "x0,x1,label"
        assert len(text.splitlines()) == 501
        assert "500 points" in "".join(
            runner.invoke(
                main,
                ["generate", "--scenario", "two-ellipse", "--seed", "1", "--out", str(out)],
            ).output
        )

    def test_byte_identical_reruns(self, runner, tmp_path):
        a = gen(runner, tmp_path, name="a.csv").read_bytes()
        b = gen(runner, tmp_path, name="b.csv").read_bytes()
        assert a == b

    def test_unknown_scenario_exits_2(self, runner, tmp_path):
        result = runner.invoke(
            main, ["generate", "--scenario", "bogus", "--out", str(tmp_path / "x.csv")]
        )
        assert result.exit_code == 2

    def test_spec_file(self, runner, tmp_path):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(
            json.dumps(
                {
                    "ellipses": [
                        {"center": [0, 0], "semi_axes": [2, 1], "rotation": 0.2, "count": 25}
                    ]
                }
            )
        )
        out = tmp_path / "pts.csv"
        result = runner.invoke(
            main, ["generate", "--scenario", str(spec_path), "--seed", "0", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        assert len(out.read_text().splitlines()) == 26


class TestFit:
    def test_model_file_written(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        model_path = tmp_path / "model.json"
        result = runner.invoke(
            main,
            ["fit", "--input", str(points), "--algorithm", "ggk", "-c", "2",
             "--seed", "0", "--out", str(model_path)],
        )
        assert result.exit_code == 0, result.output
        assert "iterations=" in result.output and "converged=" in result.output
        doc = fileio.read_model_json(model_path)
        sizes = [c["f"] for c in doc["cluster_models"]]
        assert abs(sum(sizes) - 1.0) < 1e-9

    def test_single_cluster(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        model_path = tmp_path / "model.json"
        result = runner.invoke(
            main, ["fit", "--input", str(points), "-c", "1", "--out", str(model_path)]
        )
        assert result.exit_code == 0, result.output
        doc = fileio.read_model_json(model_path)
        assert doc["converged"] is True
        assert [c["f"] for c in doc["cluster_models"]] == [1.0]

    def test_memberships_out(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        result = runner.invoke(
            main,
            ["fit", "--input", str(points), "-c", "2", "--out", str(tmp_path / "m.json"),
             "--memberships-out", str(tmp_path / "w.csv")],
        )
        assert result.exit_code == 0, result.output
        lines = (tmp_path / "w.csv").read_text().splitlines()
        assert lines[0] == "w0,w1"
        assert len(lines) == 501

    def test_parse_error_exits_2(self, runner, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("x0,x1\n1.0,oops\n")
        result = runner.invoke(
            main, ["fit", "--input", str(bad), "--out", str(tmp_path / "m.json")]
        )
        assert result.exit_code == 2

    def test_size_aware_fit_recovers_unequal_volumes(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        for alg in ("gk", "ggk"):
            result = runner.invoke(
                main,
                ["fit", "--input", str(points), "--algorithm", alg, "-c", "2",
                 "--seed", "0", "--out", str(tmp_path / f"{alg}.json")],
            )
            assert result.exit_code == 0, result.output
        v_ggk = [c["V"] for c in fileio.read_model_json(tmp_path / "ggk.json")["cluster_models"]]
        v_gk = [c["V"] for c in fileio.read_model_json(tmp_path / "gk.json")["cluster_models"]]
        ratio = lambda v: max(v) / min(v)  # noqa: E731
        assert ratio(v_ggk) > ratio(v_gk)


class TestCompare:
    def test_json_report(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        result = runner.invoke(
            main,
            ["compare", "--input", str(points), "--algorithms", "gk,ggk,gg",
             "-c", "2", "--seed", "0"],
        )
        assert result.exit_code == 0, result.output
        doc = json.loads(result.output)
        assert set(doc) == {"gk", "ggk", "gg"}
        for entry in doc.values():
            assert {"ari", "matched_accuracy", "final_objective"} <= set(entry)
        assert doc["ggk"]["ari"] >= doc["gk"]["ari"]

    def test_single_algorithm(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        result = runner.invoke(
            main, ["compare", "--input", str(points), "--algorithms", "fcm", "-c", "2"]
        )
        assert result.exit_code == 0, result.output
        assert list(json.loads(result.output)) == ["fcm"]

    def test_unlabelled_input_exits_2(self, runner, tmp_path):
        bare = tmp_path / "bare.csv"
        bare.write_text("x0,x1\n0.0,0.0\n1.0,1.0\n2.0,0.0\n")
        result = runner.invoke(main, ["compare", "--input", str(bare), "-c", "2"])
        assert result.exit_code == 2


class TestRender:
    def _fit(self, runner, tmp_path, points):
        model_path = tmp_path / "model.json"
        result = runner.invoke(
            main, ["fit", "--input", str(points), "-c", "2", "--seed", "0",
                   "--out", str(model_path)]
        )
        assert result.exit_code == 0, result.output
        return model_path

    def test_svg_written(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        model = self._fit(runner, tmp_path, points)
        out = tmp_path / "plot.svg"
        result = runner.invoke(
            main, ["render", "--input", str(points), "--model", str(model), "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        svg = out.read_text()
        assert svg.startswith("<svg") and svg.count("<ellipse") == 2

    def test_byte_identical_reruns(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        model = self._fit(runner, tmp_path, points)
        outputs = []
        for name in ("a.svg", "b.svg"):
            out = tmp_path / name
            result = runner.invoke(
                main, ["render", "--input", str(points), "--model", str(model),
                       "--out", str(out)]
            )
            assert result.exit_code == 0, result.output
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_3d_input_exits_2(self, runner, tmp_path):
        rng = np.random.default_rng(0)
        pts = tmp_path / "pts3.csv"
        rows = ["x0,x1,x2"] + [
            ",".join(repr(float(v)) for v in row) for row in rng.normal(size=(10, 3))
        ]
        pts.write_text("\n".join(rows) + "\n")
        model = self._fit(runner, tmp_path, pts)
        result = runner.invoke(
            main, ["render", "--input", str(pts), "--model", str(model),
                   "--out", str(tmp_path / "x.svg")]
        )
        assert result.exit_code == 2


class TestDeterministicModelFiles:
    def test_same_seed_same_bytes(self, runner, tmp_path):
        points = gen(runner, tmp_path)
        blobs = []
        for name in ("m1.json", "m2.json"):
            out = tmp_path / name
            result = runner.invoke(
                main, ["fit", "--input", str(points), "-c", "2", "--seed", "7",
                       "--out", str(out)]
            )
            assert result.exit_code == 0, result.output
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]
