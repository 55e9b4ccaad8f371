import numpy as np
import pytest

from fuzzyclust import core, fileio
from fuzzyclust.datagen import builtin_scenario, sample_scenario


class TestPointsCsv:
    def test_round_trip_with_labels(self):
        data = sample_scenario(builtin_scenario("two-ellipse", seed=0))
        text = fileio.points_to_csv(data)
        back = fileio.points_from_csv(text)
        assert np.array_equal(back.points, data.points)
        assert np.array_equal(back.labels, data.labels)

    def test_round_trip_without_labels(self, rng):
        data = core.Dataset(points=rng.normal(size=(10, 3)))
        back = fileio.points_from_csv(fileio.points_to_csv(data))
        assert np.array_equal(back.points, data.points)
        assert back.labels is None

    def test_header_names(self):
        data = core.Dataset(points=np.zeros((1, 2)), labels=np.array([0]))
        assert fileio.points_to_csv(data).splitlines()[0] == "x0,x1,label"

    def test_rejects_empty(self):
        with pytest.raises(fileio.FileFormatError):
            fileio.points_from_csv("")

    def test_rejects_ragged_rows(self):
        with pytest.raises(fileio.FileFormatError):
            fileio.points_from_csv("x0,x1\n1.0,2.0\n3.0\n")

    def test_rejects_non_numeric(self):
        with pytest.raises(fileio.FileFormatError):
            fileio.points_from_csv("x0,x1\n1.0,abc\n")

    def test_rejects_non_finite(self):
        with pytest.raises(fileio.FileFormatError):
            fileio.points_from_csv("x0,x1\n1.0,inf\n")


class TestModelJson:
    def _report(self):
        data = sample_scenario(builtin_scenario("two-ellipse", seed=0))
        cfg = core.FitConfig(algorithm="ggk", n_clusters=2, seed=0)
        return core.fit(data, cfg), cfg

    def test_round_trip_lossless(self, tmp_path):
        report, cfg = self._report()
        doc = fileio.model_to_dict(report, cfg.algorithm, cfg.alpha, cfg.seed)
        path = tmp_path / "model.json"
        fileio.write_model_json(path, doc)
        doc_back = fileio.read_model_json(path)
        assert doc_back == doc
        model, meta = fileio.model_from_dict(doc_back)
        assert np.array_equal(model.centers, report.model.centers)
        assert np.array_equal(model.covariances, report.model.covariances)
        assert np.array_equal(model.sizes, report.model.sizes)
        assert meta["algorithm"] == "ggk"
        assert meta["iterations"] == report.iterations

    def test_deterministic_serialization(self):
        report, cfg = self._report()
        doc = fileio.model_to_dict(report, cfg.algorithm, cfg.alpha, cfg.seed)
        assert fileio.dump_json(doc) == fileio.dump_json(doc)

    def test_malformed_document(self):
        with pytest.raises(fileio.FileFormatError):
            fileio.model_from_dict({"clusters": 2})


class TestMembershipsCsv:
    def test_shape_and_header(self):
        w = np.array([[0.25, 0.75], [1.0, 0.0]])
        lines = fileio.memberships_to_csv(w).splitlines()
        assert lines[0] == "w0,w1"
        assert len(lines) == 3
