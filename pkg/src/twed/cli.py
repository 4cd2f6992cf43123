"""Command-line interface: pairwise distances, distance matrices, k-NN
classification, property verification, approximation runs and benchmarks.

Exit codes: 0 success/pass, 1 failure/violation, 2 usage error.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import bench as bench_mod
from . import oracle
from .dataset import (
    distance_matrix,
    format_float,
    knn_classify,
    load_dataset,
    write_matrix_csv,
)
from .kernel import backend_name, twed, twed_with_path
from .model import TwedError, TwedParams
from .pwca import pwca_approximate, pwca_bound


def _params_options(fn):
    fn = click.option("--lambda", "lam", type=float, default=1.0, show_default=True,
                      help="Gap penalty added to every delete.")(fn)
    fn = click.option("--gamma", type=float, default=0.001, show_default=True,
                      help="Stiffness: weight of timestamp differences.")(fn)
    fn = click.option("--p", "norm_p", type=click.Choice(["1", "2", "inf"]),
                      default="2", show_default=True, help="Lp norm on value vectors.")(fn)
    return fn


def _build_params(lam: float, gamma: float, norm_p: str) -> TwedParams:
    return TwedParams(lam=lam, gamma=gamma, norm_p=float(norm_p))


def _fail(err: Exception):
    raise click.ClickException(f"{type(err).__name__}: {err}")


@click.group()
@click.version_option(package_name="twed")
def main():
    """Time Warp Edit Distance toolkit."""


@main.command()
@click.argument("file_a", type=click.Path(exists=True))
@click.argument("file_b", type=click.Path(exists=True))
@_params_options
@click.option("--json", "as_json", is_flag=True,
              help="Emit a JSON document with the full-precision distance.")
@click.option("--path-json", type=click.Path(), default=None,
              help="Also write the optimal edit path to this JSON file.")
def dist(file_a, file_b, lam, gamma, norm_p, as_json, path_json):
    """Distance between the single series in FILE_A and FILE_B."""
    params = _build_params(lam, gamma, norm_p)
    try:
        ds_a = load_dataset(file_a)
        ds_b = load_dataset(file_b)
        if len(ds_a) != 1 or len(ds_b) != 1:
            raise click.ClickException("each input file must contain exactly one series")
        A, B = ds_a.series[0], ds_b.series[0]
        if path_json:
            d, path, _ = twed_with_path(A, B, params)
            with open(path_json, "w") as fh:
                json.dump({"distance": d, "steps": path.to_dicts()}, fh, indent=2)
        else:
            d = twed(A, B, params)
    except TwedError as err:
        _fail(err)
    if as_json:
        click.echo(json.dumps({"distance": d}))
    else:
        click.echo(format(d, ".15g"))


@main.command()
@click.argument("dataset_file", type=click.Path(exists=True))
@click.option("-o", "--output", type=click.Path(), required=True,
              help="Destination CSV for the distance matrix.")
@_params_options
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Worker processes; the output is identical for any count.")
@click.option("--format", "fmt", type=click.Choice(["csv", "tsv"]), default=None,
              help="Input format; inferred from the extension by default.")
def matrix(dataset_file, output, lam, gamma, norm_p, jobs, fmt):
    """Pairwise distance matrix over all series in DATASET_FILE."""
    params = _build_params(lam, gamma, norm_p)
    try:
        ds = load_dataset(dataset_file, fmt)
        M = distance_matrix(ds, params, jobs=jobs)
        write_matrix_csv(M, output)
    except TwedError as err:
        _fail(err)
    click.echo(f"wrote {M.shape[0]}x{M.shape[1]} matrix to {output}")


@main.command()
@click.argument("train_file", type=click.Path(exists=True))
@click.argument("test_file", type=click.Path(exists=True))
@click.option("--k", type=int, default=1, show_default=True)
@_params_options
def knn(train_file, test_file, k, lam, gamma, norm_p):
    """k-NN classification of TEST_FILE against the labelled TRAIN_FILE."""
    params = _build_params(lam, gamma, norm_p)
    try:
        train = load_dataset(train_file, "tsv")
        test = load_dataset(test_file, "tsv")
        predictions, accuracy = knn_classify(train, test, k, params)
    except TwedError as err:
        _fail(err)
    for idx, pred in enumerate(predictions):
        click.echo(f"{idx}\t{pred}")
    click.echo(f"accuracy\t{accuracy:.6f}")


@main.command()
@click.option("--suite", type=click.Choice(list(oracle.SUITE_NAMES) + ["all"]),
              default="all", show_default=True)
@click.option("--trials", type=int, default=None,
              help="Override each suite's default trial count.")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--report", "report_file", type=click.Path(), default=None,
              help="Write the JSON reports to this file instead of stdout.")
def verify(suite, trials, seed, report_file):
    """Run the property-verification suites; exit 0 iff all pass."""
    suites = list(oracle.SUITE_NAMES) if suite == "all" else [suite]
    try:
        reports = oracle.run_suites(suites, trials=trials, seed=seed)
    except TwedError as err:
        _fail(err)
    doc = json.dumps([r.to_dict() for r in reports], indent=2)
    if report_file:
        with open(report_file, "w") as fh:
            fh.write(doc + "\n")
    else:
        click.echo(doc)
    for r in reports:
        click.echo(f"{r.name}: {'PASS' if r.passed else 'FAIL'} "
                   f"({r.trials} trials, {r.violations} violations)", err=True)
    if not all(r.passed for r in reports):
        sys.exit(1)


@main.command()
@click.argument("dataset_file", type=click.Path(exists=True))
@click.option("--segments", "-r", type=int, required=True,
              help="Number of constant segments.")
@_params_options
@click.option("--check-bound/--no-check-bound", default=True, show_default=True,
              help="Verify the closed-form distance bound.")
def pwca(dataset_file, segments, lam, gamma, norm_p, check_bound):
    """Piecewise constant approximation of the series in DATASET_FILE."""
    params = _build_params(lam, gamma, norm_p)
    try:
        ds = load_dataset(dataset_file)
        if len(ds) != 1:
            raise click.ClickException("input file must contain exactly one series")
        result = pwca_approximate(ds.series[0], segments)
    except TwedError as err:
        _fail(err)
    doc = {
        "segments": [
            {"start": s, "end": e, "constant": list(c)} for s, e, c in result.segments
        ],
        "sse": result.sse,
        "delta_t": result.delta_t,
    }
    if check_bound:
        d = twed(result.approx, result.extremities, params)
        bound = pwca_bound(len(ds.series[0]), segments, result.delta_t, params)
        doc.update({"distance": d, "bound": bound, "bound_holds": d <= bound + 1e-9})
    click.echo(json.dumps(doc, indent=2))
    if check_bound and not doc["bound_holds"]:
        sys.exit(1)


@main.command()
@click.option("--lengths", default="100,200,400", show_default=True,
              help="Comma-separated series lengths.")
@click.option("--repetitions", type=int, default=3, show_default=True)
@_params_options
@click.option("--check-scaling/--no-check-scaling", default=False,
              help="Exit nonzero when a doubling costs more than 4.5x.")
def bench(lengths, repetitions, lam, gamma, norm_p, check_scaling):
    """Time one distance call per length on every available backend."""
    params = _build_params(lam, gamma, norm_p)
    try:
        length_list = [int(x) for x in lengths.split(",") if x.strip()]
        rows = bench_mod.run_benchmark(length_list, repetitions, params)
    except (ValueError, TwedError) as err:
        raise click.UsageError(str(err))
    click.echo(f"selected backend: {backend_name()}")
    click.echo("backend\tlength\tseconds")
    for row in rows:
        click.echo(f"{row.backend}\t{row.length}\t{row.seconds:.6f}")
    if check_scaling and not bench_mod.check_quadratic_scaling(rows):
        click.echo("scaling check failed: doubling exceeded 4.5x", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
