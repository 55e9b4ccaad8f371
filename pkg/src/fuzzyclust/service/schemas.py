"""Pydantic request/response models for the clustering service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

Algorithm = Literal["fcm", "gk", "ggk", "gg"]
InitMethod = Literal["random-partition", "sampled-centers"]


class EllipseModel(BaseModel):
    center: tuple[float, float]
    semi_axes: tuple[float, float]
    rotation: float = 0.0
    count: int = Field(ge=1)


class ScenarioModel(BaseModel):
    ellipses: list[EllipseModel]
    seed: int = 0


class GenerateRequest(BaseModel):
    scenario: Optional[str] = None  # builtin name
    spec: Optional[ScenarioModel] = None  # explicit spec; overrides scenario
    seed: Optional[int] = None


class GenerateResponse(BaseModel):
    points: list[list[float]]
    labels: list[int]


class FitOptions(BaseModel):
    algorithm: Algorithm = "ggk"
    clusters: int = Field(default=2, ge=1)
    alpha: float = Field(default=2.0, gt=1.0)
    lambdas: Optional[list[float]] = None
    tol: float = Field(default=1e-6, gt=0.0)
    max_iter: int = Field(default=300, ge=1)
    seed: int = 0
    init: InitMethod = "sampled-centers"


class FitRequest(BaseModel):
    points: list[list[float]]
    options: FitOptions = FitOptions()
    return_memberships: bool = False


class ClusterDoc(BaseModel):
    center: list[float]
    covariance: list[float]  # row-major k*k
    f: float
    n: float
    V: float


class ModelDoc(BaseModel):
    algorithm: str
    clusters: int
    dim: int
    alpha: float
    seed: int
    cluster_models: list[ClusterDoc]
    objective_trace: list[float]
    iterations: int
    converged: bool


class FitResponse(BaseModel):
    model: ModelDoc
    memberships: Optional[list[list[float]]] = None


class CompareRequest(BaseModel):
    points: list[list[float]]
    labels: list[int]
    algorithms: list[Algorithm]
    options: FitOptions = FitOptions()


class AlgorithmMetrics(BaseModel):
    ari: Optional[float] = None
    matched_accuracy: Optional[float] = None
    final_objective: Optional[float] = None
    iterations: Optional[int] = None
    converged: Optional[bool] = None
    error: Optional[str] = None


class CompareResponse(BaseModel):
    results: dict[str, AlgorithmMetrics]


class RenderRequest(BaseModel):
    points: list[list[float]]
    model: ModelDoc


class RenderResponse(BaseModel):
    svg: str
