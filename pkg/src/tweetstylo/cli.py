"""Command line front end for the staged pipeline.

Every stage command is resumable: rerunning with unchanged inputs and
config is a recorded no-op. Global options may come before or after the
subcommand name is chosen, e.g.

    tweetstylo --out run1 --seed 7 all
    tweetstylo --config run.json train --family gbdt
"""

import sys
from pathlib import Path

import click

from .pipeline import (
    STAGES,
    RunLockedError,
    StageError,
    load_config,
    run_lock,
    run_stage,
    verify_run,
    write_resolved,
)
from .schema import render_schema
from .synth import generate_corpus


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON run configuration.")
@click.option("--seed", type=int, default=None, help="Master seed override.")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Run directory (default: run).")
@click.option("--jobs", type=int, default=None,
              help="Accepted for interface stability; execution is serial.")
@click.pass_context
def main(ctx, config_path, seed, out, jobs):
    """Classify conspiracy-propagating vs control users from tweet text."""
    ctx.obj = {"config_path": config_path, "seed": seed, "out": out, "jobs": jobs}


def _config(ctx, **extra):
    base = ctx.obj
    path = base["config_path"]
    if path is None:
        # a run directory remembers its configuration, so later commands
        # work without repeating --config or the input paths
        stored = Path(base["out"] or "run") / "config.json"
        if stored.is_file():
            path = stored
    try:
        return load_config(
            path,
            seed=base["seed"], out=base["out"], jobs=base["jobs"],
            **extra,
        )
    except (ValueError, KeyError) as exc:
        raise click.ClickException(str(exc))


def _execute(ctx, stages, force=False, **extra):
    cfg = _config(ctx, **extra)
    write_resolved(cfg)
    try:
        with run_lock(cfg.out_dir):
            for stage in stages:
                ran = run_stage(stage, cfg, force=force)
                click.echo(f"{stage}: {'done' if ran else 'up to date'}")
    except (StageError, RunLockedError, ValueError) as exc:
        raise click.ClickException(str(exc))


def _force_option(fn):
    return click.option("--force", is_flag=True,
                        help="Rerun even when the manifest says up to date.")(fn)


@main.command()
@click.option("--conspiracy", "conspiracy_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Conspiracy-group tweet JSONL.")
@click.option("--control", "control_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Control-group tweet JSONL.")
@_force_option
@click.pass_context
def ingest(ctx, conspiracy_path, control_path, force):
    """Validate and normalize the two raw tweet files."""
    extra = {}
    if conspiracy_path or control_path:
        if not (conspiracy_path and control_path):
            raise click.ClickException("--conspiracy and --control must be given together")
        extra["inputs"] = {"conspiracy": conspiracy_path, "control": control_path}
    _execute(ctx, ["ingest"], force=force, **extra)


@main.command()
@_force_option
@click.pass_context
def preprocess(ctx, force):
    """Filter retweets and non-English tweets, cap, and balance classes."""
    _execute(ctx, ["preprocess"], force=force)


@main.command()
@click.option("--backend", "backend_kind", type=click.Choice(["builtin", "remote"]),
              default=None, help="Entailment scorer to use.")
@click.option("--endpoint", default=None, help="Remote scorer base URL.")
@_force_option
@click.pass_context
def score(ctx, backend_kind, endpoint, force):
    """Score every tweet against the 52 entailment hypotheses."""
    _execute(ctx, ["score"], force=force,
             backend_kind=backend_kind, endpoint=endpoint)


@main.command()
@_force_option
@click.pass_context
def featurize(ctx, force):
    """Join entailment scores with linguistic features per tweet."""
    _execute(ctx, ["featurize"], force=force)


@main.command()
@_force_option
@click.pass_context
def aggregate(ctx, force):
    """Collapse tweet rows to one 868-column row per user."""
    _execute(ctx, ["aggregate"], force=force)


@main.command()
@click.option("--family", default=None,
              help="Train a single classifier family instead of all.")
@_force_option
@click.pass_context
def train(ctx, family, force):
    """Split users, cross-validate each family, save tuned models."""
    _execute(ctx, ["train"], force=force, family=family)


@main.command()
@_force_option
@click.pass_context
def evaluate(ctx, force):
    """Score the held-out test users with every trained model."""
    _execute(ctx, ["evaluate"], force=force)


@main.command()
@click.option("--method", type=click.Choice(["shap", "permutation"]), default=None,
              help="Attribution method.")
@_force_option
@click.pass_context
def explain(ctx, method, force):
    """Feature attributions, top-k curve, and idiom heatmap."""
    _execute(ctx, ["explain"], force=force, explain_method=method)


@main.command()
@_force_option
@click.pass_context
def report(ctx, force):
    """Render the plain-text run summary."""
    _execute(ctx, ["report"], force=force)


@main.command("all")
@_force_option
@click.pass_context
def run_all(ctx, force):
    """Run every stage in order."""
    _execute(ctx, list(STAGES), force=force)


@main.command()
@click.pass_context
def verify(ctx):
    """Check run artifacts against their manifests; exit 1 on drift."""
    cfg = _config(ctx)
    problems = verify_run(cfg.out_dir)
    for problem in problems:
        click.echo(problem)
    if problems:
        sys.exit(1)
    click.echo("all artifacts match their manifests")


@main.command()
def schema():
    """Print the 868-column user feature schema."""
    click.echo(render_schema(), nl=False)


@main.command()
@click.argument("dest", type=click.Path(file_okay=False), default="synth-corpus")
@click.option("--users", type=int, default=100, help="Users per group.")
@click.option("--tweets", type=int, default=20, help="Tweets per user.")
@click.pass_context
def synth(ctx, dest, users, tweets):
    """Generate a small synthetic corpus for smoke runs."""
    seed = ctx.obj["seed"] if ctx.obj["seed"] is not None else 0
    paths = generate_corpus(dest, seed=seed, users_per_group=users, tweets_per_user=tweets)
    for label in sorted(paths):
        click.echo(f"{label}: {paths[label]}")


if __name__ == "__main__":
    main()
