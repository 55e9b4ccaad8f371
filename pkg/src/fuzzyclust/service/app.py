"""FastAPI service exposing generate / fit / compare / render.

The CLI is a thin client of these endpoints (in-process by default).
Error mapping: bad inputs -> 400/422, numerical degeneracy -> 409.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import core, datagen, fileio, metrics, render
from . import schemas

app = FastAPI(title="fuzzyclust", version="0.1.0")


def _dataset(points: list[list[float]], labels=None) -> core.Dataset:
    try:
        return core.Dataset(
            points=np.array(points, dtype=float),
            labels=np.array(labels, dtype=int) if labels is not None else None,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _config(opts: schemas.FitOptions) -> core.FitConfig:
    return core.FitConfig(
        algorithm=opts.algorithm,
        n_clusters=opts.clusters,
        alpha=opts.alpha,
        lambdas=np.array(opts.lambdas) if opts.lambdas is not None else None,
        tol=opts.tol,
        max_iter=opts.max_iter,
        seed=opts.seed,
        init=opts.init,
    )


@app.post("/generate", response_model=schemas.GenerateResponse)
def generate(req: schemas.GenerateRequest) -> schemas.GenerateResponse:
    if req.spec is not None:
        try:
            spec = datagen.ScenarioSpec.from_dict(req.spec.model_dump())
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        if req.seed is not None:
            spec = datagen.ScenarioSpec(ellipses=spec.ellipses, seed=req.seed)
    elif req.scenario is not None:
        try:
            spec = datagen.builtin_scenario(req.scenario, seed=req.seed)
        except datagen.UnknownScenario as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
    else:
        raise HTTPException(status_code=400, detail="scenario or spec required")
    data = datagen.sample_scenario(spec)
    return schemas.GenerateResponse(
        points=data.points.tolist(), labels=data.labels.tolist()
    )


@app.post("/fit", response_model=schemas.FitResponse)
def fit(req: schemas.FitRequest) -> schemas.FitResponse:
    data = _dataset(req.points)
    cfg = _config(req.options)
    try:
        report = core.fit(data, cfg)
    except core.DegenerateCluster as exc:
        raise HTTPException(
            status_code=409, detail={"cluster": exc.cluster, "message": str(exc)}
        ) from None
    except core.InvalidConfig as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    doc = fileio.model_to_dict(report, cfg.algorithm, cfg.alpha, cfg.seed)
    return schemas.FitResponse(
        model=schemas.ModelDoc(**doc),
        memberships=report.partition.tolist() if req.return_memberships else None,
    )


@app.post(
    "/compare",
    response_model=schemas.CompareResponse,
    response_model_exclude_none=True,
)
def compare(req: schemas.CompareRequest) -> schemas.CompareResponse:
    data = _dataset(req.points, labels=req.labels)
    if data.labels is None:
        raise HTTPException(status_code=400, detail="labels required")
    cfg = _config(req.options)
    try:
        results = metrics.compare(data, list(req.algorithms), cfg)
    except (ValueError, core.InvalidConfig) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    return schemas.CompareResponse(
        results={
            alg: schemas.AlgorithmMetrics(**res.to_dict())
            for alg, res in results.items()
        }
    )


@app.post("/render", response_model=schemas.RenderResponse)
def render_endpoint(req: schemas.RenderRequest) -> schemas.RenderResponse:
    data = _dataset(req.points)
    try:
        model, meta = fileio.model_from_dict(req.model.model_dump())
    except fileio.FileFormatError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    if data.dim != 2 or model.centers.shape[1] != 2:
        raise HTTPException(status_code=400, detail="render supports 2-D data only")
    try:
        partition = core.predict_memberships(
            data.points, model, meta["algorithm"], float(meta["alpha"])
        )
        svg = render.render_svg(data.points, partition, model)
    except (core.InvalidConfig, render.DimensionUnsupported) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    return schemas.RenderResponse(svg=svg)
