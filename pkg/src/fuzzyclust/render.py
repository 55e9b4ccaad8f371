"""Deterministic SVG scatter plots of 2-D partitions.

Points are colored by hardened assignment; each cluster gets its center
marker and a 2-sigma covariance ellipse.  Output is plain SVG text so
renders are diffable and byte-stable.
"""

from __future__ import annotations

import math

import numpy as np

from .core import ClusterModel
from .metrics import harden

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)

_SIZE = 640
_MARGIN = 40.0
_SIGMA = 2.0


class DimensionUnsupported(Exception):
    pass


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _ellipse_geometry(cov: np.ndarray) -> tuple[float, float, float]:
    """Semi-axes and tilt of the 2-sigma ellipse of a 2x2 covariance.

    Closed-form eigendecomposition: half-trace plus/minus the discriminant
    root; no general eigensolver needed in 2-D.
    """
    a, b, c = cov[0, 0], cov[0, 1], cov[1, 1]
    half_trace = 0.5 * (a + c)
    root = math.sqrt((0.5 * (a - c)) ** 2 + b * b)
    lam1 = max(half_trace + root, 0.0)
    lam2 = max(half_trace - root, 0.0)
    if root == 0.0:
        angle = 0.0
    else:
        angle = math.atan2(lam1 - a, b) if b != 0.0 else (0.0 if a >= c else math.pi / 2)
    return _SIGMA * math.sqrt(lam1), _SIGMA * math.sqrt(lam2), angle


def render_svg(points: np.ndarray, partition: np.ndarray, model: ClusterModel) -> str:
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise DimensionUnsupported("render supports 2-D data only")
    if model.centers.shape[1] != 2:
        raise DimensionUnsupported("render supports 2-D models only")

    labels = harden(partition)
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    scale = (_SIZE - 2 * _MARGIN) / span.max()

    def to_px(p):
        x = _MARGIN + (p[0] - lo[0]) * scale
        y = _SIZE - _MARGIN - (p[1] - lo[1]) * scale
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>',
    ]
    for i, p in enumerate(points):
        x, y = to_px(p)
        color = PALETTE[labels[i] % len(PALETTE)]
        parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="{color}" fill-opacity="0.7"/>'
        )
    for j in range(model.centers.shape[0]):
        color = PALETTE[j % len(PALETTE)]
        cx, cy = to_px(model.centers[j])
        r1, r2, angle = _ellipse_geometry(model.covariances[j])
        deg = -math.degrees(angle)  # SVG y-axis points down
        parts.append(
            f'<ellipse cx="{_fmt(cx)}" cy="{_fmt(cy)}" rx="{_fmt(r1 * scale)}" '
            f'ry="{_fmt(r2 * scale)}" fill="none" stroke="{color}" stroke-width="2" '
            f'transform="rotate({_fmt(deg)} {_fmt(cx)} {_fmt(cy)})"/>'
        )
        parts.append(
            f'<path d="M {_fmt(cx - 6)} {_fmt(cy)} H {_fmt(cx + 6)} '
            f'M {_fmt(cx)} {_fmt(cy - 6)} V {_fmt(cy + 6)}" '
            f'stroke="black" stroke-width="2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
