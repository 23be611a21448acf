"""
Miscellaneous commands
"""
import click

from evoart.commandline.common import KeyValueType, load_parameters


@click.command(name="config")
@click.option(
    "-c",
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Evolution parameter file (defaults are used if it's not passed).",
)
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Override the random seed.")
@click.option(
    "--set",
    "overrides",
    type=KeyValueType(),
    multiple=True,
    help="Override a parameter from the parameter file (can be repeated).",
)
@click.option(
    "-f",
    "--config-format",
    is_flag=True,
    default=False,
    help="Output the parameters in the parameter file format",
)
@click.option(
    "-n", "--non-defaults", is_flag=True, default=False, help="Only output non-default values"
)
def config_c(config_path, seed, overrides, config_format, non_defaults):
    """
    Print the effective evolution parameters and settings.

    This takes into account the parameter file, the defaults and all overrides
    passed via `--seed` and `--set`.

    This command can be used to create a parameter file with all the defaults:

    ```
    evoart config --config-format > params.cfg
    ```

    ...or save a parameter file overriding an entry:

    ```
    evoart config -c params.cfg --set polygons=50 -f > params_50.cfg
    ```
    """
    from tabulate import tabulate

    from evoart.config import CONFIG
    from evoart.config.export import (
        parameter_rows,
        serialize_ambient_config,
        serialize_config,
    )

    config = load_parameters(config_path, seed, overrides)

    if config_format:
        click.echo(serialize_config(config, include_defaults=not non_defaults), nl=False)
        return

    defaults = {key: value for key, value, _ in parameter_rows(load_parameters(None, None, []))}
    rows = [
        (key, value)
        for key, value, _ in parameter_rows(config)
        if not non_defaults or value != defaults[key]
    ]
    click.echo(tabulate(rows, headers=["Parameter", "Value"]))
    click.echo("\nSettings:\n")
    click.echo(serialize_ambient_config(CONFIG, include_defaults=not non_defaults), nl=False)
