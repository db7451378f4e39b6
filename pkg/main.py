import functools
import logging
import sys
from pathlib import Path

import click

from logs.utils import configure_logging
from src.entities.config import RunConfig, load_config
from src.errors import ArchfuseError, InputError
from src.pipeline.commands import (
    EXPERIMENTS,
    cmd_evaluate,
    cmd_experiment,
    cmd_optimize_weights,
    cmd_recover,
    cmd_sweep,
)

logger = logging.getLogger("archfuse")

# Every RunConfig key is a flag of the same dotted name.
CONFIG_FLAGS = [
    ("deps", click.Path(dir_okay=False)),
    ("deps_format", click.Choice(["canonical", "depends"])),
    ("source_root", click.Path(file_okay=False)),
    ("output_dir", click.Path(file_okay=False)),
    ("type_weights", click.Path(dir_okay=False)),
    ("resolution", float),
    ("seed", int),
    ("verbose", click.BOOL),
    ("log_output", click.BOOL),
    ("ipr.damping", float),
    ("ipr.tol", float),
    ("ipr.max_iter", int),
    ("lda.topics", int),
    ("lda.iterations", int),
    ("lda.alpha", float),
    ("lda.beta", float),
    ("lda.quantum", float),
    ("text.weights.filename", float),
    ("text.weights.definition", float),
    ("text.weights.comment", float),
    ("text.extra_stop_words", str),
    ("fusion.use_text", click.BOOL),
    ("fusion.use_folder", click.BOOL),
    ("fusion.use_entity_importance", click.BOOL),
    ("fusion.use_type_weights", click.BOOL),
    ("fusion.corr_threshold", float),
    ("fusion.coef_t_floor", float),
    ("fusion.folder_clamp", float),
    ("optimizer.budget", int),
    ("optimizer.patience", int),
    ("optimizer.resolution", float),
]


def _param(key: str) -> str:
    return key.replace(".", "__")


def config_options(command):
    """Attach --config, --no-text, --no-folder and one flag per config key; pass a RunConfig on."""

    @functools.wraps(command)
    def wrapper(config_file, no_text, no_folder, **kwargs):
        overrides = {key: kwargs.pop(_param(key)) for key, _ in CONFIG_FLAGS}
        if no_text:
            overrides["fusion.use_text"] = False
        if no_folder:
            overrides["fusion.use_folder"] = False
        config = _guard(lambda: load_config(config_file, overrides))
        log_file = Path(config.output_dir) / "run.log" if config.log_output else None
        configure_logging(config.verbose, log_file)
        return command(config, **kwargs)

    for key, kind in reversed(CONFIG_FLAGS):
        wrapper = click.option(f"--{key}", _param(key), type=kind, default=None)(wrapper)
    wrapper = click.option("--no-folder", is_flag=True, help="Alias for --fusion.use_folder false.")(wrapper)
    wrapper = click.option("--no-text", is_flag=True, help="Alias for --fusion.use_text false.")(wrapper)
    wrapper = click.option(
        "--config", "config_file", type=click.Path(dir_okay=False), default=None,
        help="Config file (default: $ARCHFUSE_CONFIG or ./config.yaml).",
    )(wrapper)
    return wrapper


def _guard(action):
    """Run a command body, mapping library errors to exit codes (2 input, 1 pipeline)."""
    try:
        return action()
    except InputError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)
    except ArchfuseError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)


@click.group()
def cli():
    """Recover module architectures from dependencies, code text and folders."""


@cli.command()
@config_options
def recover(config: RunConfig):
    """Run the full recovery pipeline and write the architecture."""
    result = _guard(lambda: cmd_recover(config))
    click.echo(
        f"{len(result.architecture)} clusters, Q={result.modularity:.4f}, "
        f"w_text={result.weights.w_text:.3f}, w_folder={result.weights.w_folder:.3f}"
    )


@cli.command()
@click.argument("recovered", type=click.Path(dir_okay=False))
@click.argument("ground_truth", type=click.Path(dir_okay=False))
@click.option("--th", type=float, default=0.66, show_default=True, help="c2c_cvg overlap threshold.")
@click.option("--project", default=None, help="Row name in the CSV (default: recovered file stem).")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Append a CSV row here.")
@click.option("--all-thresholds", is_flag=True, help="Also report c2c_cvg at 0.66, 0.50, 0.33 and 0.10.")
@click.option("--verbose/--quiet", default=False)
def evaluate(recovered, ground_truth, th, project, csv_path, all_thresholds, verbose):
    """Compare a recovered architecture against a ground truth (RSF or JSON)."""
    configure_logging(verbose)
    if not 0 < th <= 1:
        click.echo("error: --th must be in (0, 1]", err=True)
        sys.exit(2)
    _guard(lambda: cmd_evaluate(recovered, ground_truth, th, project, csv_path, all_thresholds))


@cli.command("optimize-weights")
@click.option("--manifest", type=click.Path(dir_okay=False), default=None,
              help="Text file listing one dependency file per line.")
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="Where to write the weights (default: <output_dir>/type_weights.txt).")
@config_options
def optimize_weights(config: RunConfig, manifest, output):
    """Learn dependency-type weights that maximize modularity over a corpus."""
    target = output or Path(config.output_dir) / "type_weights.txt"
    weights = _guard(lambda: cmd_optimize_weights(config, manifest, target))
    click.echo(weights.dump(), nl=False)


@cli.command()
@click.option("--gammas", default="0.5,1.0,1.7,3.0", show_default=True, help="Comma-separated resolutions.")
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="CSV path (default: <output_dir>/sweep.csv).")
@config_options
def sweep(config: RunConfig, gammas, output):
    """Cluster count for each resolution."""
    try:
        values = [float(g) for g in gammas.split(",") if g.strip()]
    except ValueError:
        click.echo(f"error: cannot parse --gammas '{gammas}'", err=True)
        sys.exit(2)
    rows = _guard(lambda: cmd_sweep(config, values, output))
    for gamma, count in rows:
        click.echo(f"{gamma}\t{count}")


@cli.command()
@click.argument("name", type=click.Choice(EXPERIMENTS))
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="CSV path for the metric series.")
@click.option("--verbose/--quiet", default=False)
def experiment(name, seed, output, verbose):
    """Run a metric experiment (merge or nine-cluster) and print its series."""
    configure_logging(verbose)
    rows = _guard(lambda: cmd_experiment(name, seed, output))
    columns = list(rows[0])
    click.echo("\t".join(columns))
    for row in rows:
        click.echo("\t".join(f"{row[c]:.2f}" if isinstance(row[c], float) else str(row[c]) for c in columns))


if __name__ == "__main__":
    cli()
