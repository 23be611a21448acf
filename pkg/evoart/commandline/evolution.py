"""
Command line routines for evolving images and running experiment sweeps
"""
import os

import click

from evoart.commandline.common import (
    load_parameters,
    load_target,
    parameter_options,
    target_options,
)


@click.command(name="run")
@target_options
@parameter_options
@click.option(
    "-o",
    "--out",
    "out_dir",
    type=click.Path(file_okay=False),
    required=True,
    help="Output directory.",
)
def run_c(target, resize, config_path, seed, overrides, out_dir):
    """
    Evolve genomes towards a target image.

    Every `save_rate` generations (and at the last generation), the image and the genome
    of every parent are written into the output directory:

    ```
    OUT/gen_1000/parent_0.png
    OUT/gen_1000/parent_0.genome.json
    ```

    The best score of every generation is written into `OUT/stats.csv` and the effective
    parameters into `OUT/parameters.cfg`. Parameters are read from the parameter file and
    can be overridden with `--seed` and `--set`:

    ```
    evoart run -t mona_lisa.png -c params.cfg -o out --set polygons=50 --set vertices=8
    ```
    """
    from evoart.config import EVOART_CMD_ASCII, EVOART_PROGRESS, EVOART_WORKERS
    from evoart.config.export import serialize_config
    from evoart.core.evolution import SnapshotWriter, best, run

    config = load_parameters(config_path, seed, overrides)
    image = load_target(target, resize)

    writer = SnapshotWriter(out_dir)
    writer.write_parameters(serialize_config(config))
    result = run(
        config,
        image,
        writer,
        progress=EVOART_PROGRESS,
        workers=EVOART_WORKERS,
        ascii_progress=EVOART_CMD_ASCII,
    )

    champion = best(result.population).score
    click.echo(
        "Final best score after %d generations: absolute_score=%d relative_percent=%.2f"
        % (config.max_generations, champion.absolute, champion.relative_percent)
    )


@click.command(name="sweep")
@target_options
@parameter_options
@click.option(
    "-o",
    "--out",
    "out_dir",
    type=click.Path(file_okay=False),
    required=True,
    help="Output directory.",
)
@click.option("-p", "--preset", default=None, help="Name of a built-in sweep.")
@click.option(
    "-s",
    "--spec",
    "spec_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="YAML sweep file.",
)
@click.option(
    "-r",
    "--repetitions",
    type=click.IntRange(min=1),
    default=None,
    help="Number of runs per axis value (overrides the sweep file).",
)
@click.option(
    "--no-snapshots",
    is_flag=True,
    default=False,
    help="Don't write the snapshots of every run, only the CSV files.",
)
def sweep_c(
    target,
    resize,
    config_path,
    seed,
    overrides,
    out_dir,
    preset,
    spec_path,
    repetitions,
    no_snapshots,
):
    """
    Run an experiment sweep.

    Repeats a run for every value of one parameter (the axis), `repetitions` times each,
    with the seeds `seed`, `seed + 1`, ... Parameters that aren't swept come from the
    parameter file.

    Built-in sweeps (`--preset`): vertices, polygons, circles, lines, combinations,
    mutation_probability. Custom sweeps are YAML files (`--spec`):

    ```
    axis: polygons
    values: [5, 10, 15, 20]
    repetitions: 15
    ```

    Writes the best score of every generation of every run into `OUT/raw.csv` and
    the per-generation mean and standard deviation across repetitions into
    `OUT/aggregate.csv`, then prints the final figures of every axis value.
    """
    from tabulate import tabulate

    from evoart.config import EVOART_CMD_ASCII, EVOART_PROGRESS, EVOART_WORKERS
    from evoart.config.export import serialize_config
    from evoart.core.evolution import SnapshotWriter
    from evoart.core.experiment import (
        DEFAULT_REPETITIONS,
        aggregate_results,
        load_sweep_spec,
        run_sweep,
        summarize,
        write_aggregate_csv,
        write_raw_csv,
    )
    from evoart.core.experiment import preset as get_preset

    if (preset is None) == (spec_path is None):
        raise click.UsageError("Exactly one of --preset and --spec is required!")

    config = load_parameters(config_path, seed, overrides)
    if preset:
        spec = get_preset(preset, config, repetitions or DEFAULT_REPETITIONS)
    else:
        spec = load_sweep_spec(spec_path, config)
        if repetitions:
            spec = spec._replace(repetitions=repetitions)
    spec.validate()
    image = load_target(target, resize)

    SnapshotWriter(out_dir).write_parameters(serialize_config(config))
    results = run_sweep(
        spec,
        image,
        output_directory=None if no_snapshots else out_dir,
        progress=EVOART_PROGRESS,
        workers=EVOART_WORKERS,
        ascii_progress=EVOART_CMD_ASCII,
    )
    series = aggregate_results(results, image.dims)
    write_raw_csv(results, os.path.join(out_dir, "raw.csv"))
    write_aggregate_csv(series, os.path.join(out_dir, "aggregate.csv"))

    click.echo(
        tabulate(
            [
                (
                    r.axis_value,
                    r.runs,
                    "%.2f" % r.final_mean_absolute,
                    "%.2f" % r.final_sd_absolute,
                    "%.2f" % r.final_mean_relative_percent,
                )
                for r in summarize(series)
            ],
            headers=[spec.axis, "Runs", "Mean score", "SD", "Mean %"],
        )
    )
