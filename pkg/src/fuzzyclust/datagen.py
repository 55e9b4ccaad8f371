"""Seeded synthetic 2-D scenarios: points uniform inside rotated ellipses.

The built-in scenarios exercise the failure mode that motivates the
size-aware algorithm: clusters with strongly unequal volumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Dataset


class UnknownScenario(Exception):
    pass


@dataclass(frozen=True)
class EllipseSpec:
    center: tuple[float, float]
    semi_axes: tuple[float, float]  # (a, b) with a >= b > 0
    rotation: float  # radians
    count: int

    def __post_init__(self):
        a, b = self.semi_axes
        if not (a >= b > 0.0):
            raise ValueError("semi_axes must satisfy a >= b > 0")
        if self.count < 1:
            raise ValueError("count must be >= 1")

    def contains(self, point) -> bool:
        """Membership test in the implicit-inequality sense (boundary in)."""
        x, y = np.asarray(point, dtype=float) - np.asarray(self.center)
        c, s = math.cos(-self.rotation), math.sin(-self.rotation)
        u, v = c * x - s * y, s * x + c * y
        a, b = self.semi_axes
        return (u / a) ** 2 + (v / b) ** 2 <= 1.0 + 1e-12


@dataclass(frozen=True)
class ScenarioSpec:
    ellipses: tuple[EllipseSpec, ...]
    seed: int = 0

    def __post_init__(self):
        if not self.ellipses:
            raise ValueError("at least one ellipse required")
        object.__setattr__(self, "ellipses", tuple(self.ellipses))

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "ellipses": [
                {
                    "center": list(e.center),
                    "semi_axes": list(e.semi_axes),
                    "rotation": e.rotation,
                    "count": e.count,
                }
                for e in self.ellipses
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ScenarioSpec":
        return cls(
            ellipses=tuple(
                EllipseSpec(
                    center=tuple(e["center"]),
                    semi_axes=tuple(e["semi_axes"]),
                    rotation=float(e.get("rotation", 0.0)),
                    count=int(e["count"]),
                )
                for e in doc["ellipses"]
            ),
            seed=int(doc.get("seed", 0)),
        )


def sample_scenario(spec: ScenarioSpec) -> Dataset:
    """Uniform rejection sampling inside each ellipse, labels by ellipse.

    One generator seeded once drives all ellipses in order, so the whole
    dataset is a deterministic function of the spec.
    """
    rng = np.random.default_rng(spec.seed)
    points, labels = [], []
    for idx, ell in enumerate(spec.ellipses):
        a, b = ell.semi_axes
        c, s = math.cos(ell.rotation), math.sin(ell.rotation)
        rot = np.array([[c, -s], [s, c]])
        drawn = 0
        while drawn < ell.count:
            u = rng.uniform(-a, a)
            v = rng.uniform(-b, b)
            if (u / a) ** 2 + (v / b) ** 2 > 1.0:
                continue
            points.append(rot @ (u, v) + ell.center)
            labels.append(idx)
            drawn += 1
    return Dataset(points=np.array(points), labels=np.array(labels))


_BUILTINS = {
    # volume ratio 16:1 between the two ellipses
    "two-ellipse": ScenarioSpec(
        ellipses=(
            EllipseSpec(center=(0.0, 0.0), semi_axes=(8.0, 3.0), rotation=0.3, count=400),
            EllipseSpec(center=(11.0, 7.0), semi_axes=(2.0, 0.75), rotation=1.1, count=100),
        )
    ),
    "three-ellipse": ScenarioSpec(
        ellipses=(
            EllipseSpec(center=(0.0, 0.0), semi_axes=(6.0, 2.0), rotation=0.5, count=300),
            EllipseSpec(center=(10.0, -4.0), semi_axes=(3.0, 1.5), rotation=-0.6, count=150),
            EllipseSpec(center=(1.0, 8.0), semi_axes=(1.5, 0.75), rotation=0.0, count=60),
        )
    ),
}


def builtin_scenario(name: str, seed: int | None = None) -> ScenarioSpec:
    """Look up a built-in scenario, optionally rebinding its seed."""
    try:
        spec = _BUILTINS[name]
    except KeyError:
        raise UnknownScenario(
            f"unknown scenario {name!r}; known: {sorted(_BUILTINS)}"
        ) from None
    if seed is not None:
        spec = ScenarioSpec(ellipses=spec.ellipses, seed=seed)
    return spec
