"""Thin command-line client over the clustering service.

By default each command talks to the FastAPI app in-process; pass
``--server URL`` to target a running instance instead.  Exit codes:
0 success, 2 usage/parse error, 3 numerical degeneracy.
"""

from __future__ import annotations

import json
import sys

import click

from . import fileio

EXIT_USAGE = 2
EXIT_DEGENERATE = 3


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=300.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _post(server: str | None, path: str, payload: dict) -> dict:
    with _client(server) as client:
        resp = client.post(path, json=payload)
    if resp.status_code == 409:
        detail = resp.json().get("detail", {})
        click.echo(f"degenerate cluster: {detail}", err=True)
        sys.exit(EXIT_DEGENERATE)
    if resp.status_code >= 400:
        click.echo(f"error: {resp.json().get('detail')}", err=True)
        sys.exit(EXIT_USAGE)
    return resp.json()


def _read_points(path):
    try:
        return fileio.read_points_csv(path)
    except (OSError, fileio.FileFormatError) as exc:
        click.echo(f"cannot read points file {path}: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _fit_options(algorithm, clusters, alpha, tol, max_iter, seed, init):
    return {
        "algorithm": algorithm,
        "clusters": clusters,
        "alpha": alpha,
        "tol": tol,
        "max_iter": max_iter,
        "seed": seed,
        "init": init,
    }


_shared_fit_flags = [
    click.option("--clusters", "-c", type=int, default=2, show_default=True),
    click.option("--alpha", type=float, default=2.0, show_default=True),
    click.option("--tol", type=float, default=1e-6, show_default=True),
    click.option("--max-iter", type=int, default=300, show_default=True),
    click.option("--seed", type=int, default=0, show_default=True),
    click.option(
        "--init",
        type=click.Choice(["random-partition", "sampled-centers"]),
        default="sampled-centers",
        show_default=True,
    ),
]


def _with_fit_flags(cmd):
    for flag in reversed(_shared_fit_flags):
        cmd = flag(cmd)
    return cmd


@click.group()
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
@click.pass_context
def main(ctx, server):
    """Fuzzy clustering toolkit: generate, fit, compare, render."""
    ctx.obj = server


@main.command()
@click.option("--scenario", required=True, help="Builtin name or JSON spec file path.")
@click.option("--seed", type=int, default=None)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.pass_obj
def generate(server, scenario, seed, out):
    """Sample a synthetic scenario and write a labelled points CSV."""
    payload: dict = {"seed": seed}
    if scenario.endswith(".json"):
        try:
            with open(scenario, "r", encoding="utf-8") as fh:
                payload["spec"] = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            click.echo(f"cannot read scenario file {scenario}: {exc}", err=True)
            sys.exit(EXIT_USAGE)
    else:
        payload["scenario"] = scenario
    doc = _post(server, "/generate", payload)
    import numpy as np

    from .core import Dataset

    data = Dataset(points=np.array(doc["points"]), labels=np.array(doc["labels"]))
    try:
        fileio.write_points_csv(out, data)
    except OSError as exc:
        click.echo(f"cannot write {out}: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    click.echo(f"{data.n_points} points written to {out}")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=False))
@click.option(
    "--algorithm", type=click.Choice(["fcm", "gk", "ggk", "gg"]), default="ggk",
    show_default=True,
)
@_with_fit_flags
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--memberships-out", default=None, type=click.Path(dir_okay=False))
@click.pass_obj
def fit(server, input_path, algorithm, clusters, alpha, tol, max_iter, seed, init, out, memberships_out):
    """Fit a model to a points CSV and write the model JSON."""
    data = _read_points(input_path)
    doc = _post(
        server,
        "/fit",
        {
            "points": data.points.tolist(),
            "options": _fit_options(algorithm, clusters, alpha, tol, max_iter, seed, init),
            "return_memberships": memberships_out is not None,
        },
    )
    model = doc["model"]
    fileio.write_model_json(out, model)
    if memberships_out is not None:
        import numpy as np

        with open(memberships_out, "w", encoding="utf-8", newline="") as fh:
            fh.write(fileio.memberships_to_csv(np.array(doc["memberships"])))
    trace = model["objective_trace"]
    final_j = trace[-1] if trace else float("nan")
    click.echo(
        f"{algorithm}: iterations={model['iterations']} objective={final_j:.6g} "
        f"converged={str(model['converged']).lower()}"
    )


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=False))
@click.option(
    "--algorithms",
    default="gk,ggk,gg",
    show_default=True,
    help="Comma-separated subset of fcm,gk,ggk,gg.",
)
@_with_fit_flags
@click.pass_obj
def compare(server, input_path, algorithms, clusters, alpha, tol, max_iter, seed, init):
    """Fit several algorithms on a labelled CSV and print a JSON report."""
    data = _read_points(input_path)
    if data.labels is None:
        click.echo("compare requires a labelled points file", err=True)
        sys.exit(EXIT_USAGE)
    algs = [a.strip() for a in algorithms.split(",") if a.strip()]
    doc = _post(
        server,
        "/compare",
        {
            "points": data.points.tolist(),
            "labels": data.labels.tolist(),
            "algorithms": algs,
            "options": _fit_options("ggk", clusters, alpha, tol, max_iter, seed, init),
        },
    )
    click.echo(fileio.dump_json(doc["results"]), nl=False)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=False))
@click.option("--model", "model_path", required=True, type=click.Path(exists=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.pass_obj
def render(server, input_path, model_path, out):
    """Render a points CSV and model JSON to an SVG scatter plot."""
    data = _read_points(input_path)
    try:
        model_doc = fileio.read_model_json(model_path)
    except (OSError, fileio.FileFormatError) as exc:
        click.echo(f"cannot read model file {model_path}: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    doc = _post(server, "/render", {"points": data.points.tolist(), "model": model_doc})
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(doc["svg"])
    click.echo(f"wrote {out}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the clustering service with uvicorn."""
    import uvicorn

    uvicorn.run("fuzzyclust.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
