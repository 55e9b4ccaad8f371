"""Points CSV and model JSON formats.

Points files are plain CSV: k numeric columns named x0..x{k-1}, plus an
optional trailing integer column named ``label``.  Model files are JSON
documents that round-trip doubles exactly (shortest-repr serialization).
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .core import ClusterModel, ClusterStats, Dataset, FitReport


class FileFormatError(Exception):
    pass


def points_to_csv(data: Dataset) -> str:
    k = data.dim
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = [f"x{d}" for d in range(k)]
    if data.labels is not None:
        header.append("label")
    writer.writerow(header)
    for i in range(data.n_points):
        row = [repr(float(v)) for v in data.points[i]]
        if data.labels is not None:
            row.append(str(int(data.labels[i])))
        writer.writerow(row)
    return buf.getvalue()


def points_from_csv(text: str) -> Dataset:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise FileFormatError("empty points file") from None
    has_labels = bool(header) and header[-1].strip().lower() == "label"
    k = len(header) - (1 if has_labels else 0)
    if k < 1:
        raise FileFormatError("no coordinate columns")
    points, labels = [], []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise FileFormatError(f"line {lineno}: expected {len(header)} columns")
        try:
            coords = [float(v) for v in row[:k]]
        except ValueError as exc:
            raise FileFormatError(f"line {lineno}: {exc}") from None
        if not all(np.isfinite(coords)):
            raise FileFormatError(f"line {lineno}: non-finite coordinate")
        points.append(coords)
        if has_labels:
            try:
                labels.append(int(row[k]))
            except ValueError as exc:
                raise FileFormatError(f"line {lineno}: {exc}") from None
    if not points:
        raise FileFormatError("points file has no data rows")
    return Dataset(
        points=np.array(points), labels=np.array(labels) if has_labels else None
    )


def write_points_csv(path, data: Dataset) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(points_to_csv(data))


def read_points_csv(path) -> Dataset:
    with open(path, "r", encoding="utf-8") as fh:
        return points_from_csv(fh.read())


# ---------------------------------------------------------------------------
# model JSON


def model_to_dict(report: FitReport, algorithm: str, alpha: float, seed: int) -> dict:
    model = report.model
    c, k = model.centers.shape
    return {
        "algorithm": algorithm,
        "clusters": c,
        "dim": k,
        "alpha": alpha,
        "seed": seed,
        "cluster_models": [
            {
                "center": [float(v) for v in model.centers[j]],
                "covariance": [float(v) for v in model.covariances[j].ravel()],
                "f": float(model.sizes[j]),
                "n": float(model.stats.cardinality[j]),
                "V": float(model.stats.volume[j]),
            }
            for j in range(c)
        ],
        "objective_trace": [float(v) for v in report.objective_trace],
        "iterations": report.iterations,
        "converged": report.converged,
    }


def model_from_dict(doc: dict) -> tuple[ClusterModel, dict]:
    """Rebuild a ClusterModel; also returns the metadata fields as a dict."""
    try:
        c = int(doc["clusters"])
        k = int(doc["dim"])
        entries = doc["cluster_models"]
        centers = np.array([e["center"] for e in entries], dtype=float)
        covs = np.array([e["covariance"] for e in entries], dtype=float).reshape(
            c, k, k
        )
        sizes = np.array([e["f"] for e in entries], dtype=float)
        stats = ClusterStats(
            cardinality=np.array([e["n"] for e in entries], dtype=float),
            volume=np.array([e["V"] for e in entries], dtype=float),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed model document: {exc}") from None
    meta = {
        key: doc.get(key)
        for key in ("algorithm", "alpha", "seed", "objective_trace", "iterations", "converged")
    }
    return ClusterModel(centers=centers, covariances=covs, sizes=sizes, stats=stats), meta


def dump_json(doc: dict) -> str:
    """Deterministic JSON text (fixed separators and key order)."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_model_json(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(doc))


def read_model_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"bad model JSON: {exc}") from None


def memberships_to_csv(w: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"w{j}" for j in range(w.shape[1])])
    for row in w:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()
