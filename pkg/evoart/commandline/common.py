"""
Various common functions used by the command line interface.
"""
from typing import TYPE_CHECKING, Dict, Optional, Sequence, Tuple

import click
from click.core import Context, Parameter

if TYPE_CHECKING:
    from evoart.core.evolution import EvolutionConfig
    from evoart.core.raster import ImageBuffer
    from evoart.core.types import CanvasDims


class KeyValueType(click.ParamType):
    """Parser for key=value pairs (parameter overrides)."""

    name = "KEY=VALUE"

    def convert(
        self, value: str, param: Optional[Parameter], ctx: Optional[Context]
    ) -> Tuple[str, str]:
        key, sep, val = value.partition("=")
        if not sep or not key.strip() or not val.strip():
            self.fail("Expected KEY=VALUE, got %r" % value, param, ctx)
        return key.strip(), val.strip()


class DimsType(click.ParamType):
    """Parser for canvas dimensions (WIDTHxHEIGHT, e.g. 200x200)."""

    name = "WxH"

    def convert(
        self, value: str, param: Optional[Parameter], ctx: Optional[Context]
    ) -> "CanvasDims":
        from evoart.core.output import parse_dims

        try:
            return parse_dims(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)
            raise


def parameter_options(f):
    """Options shared by the commands that take evolution parameters."""
    f = click.option(
        "--set",
        "overrides",
        type=KeyValueType(),
        multiple=True,
        help="Override a parameter from the parameter file (can be repeated).",
    )(f)
    f = click.option(
        "--seed", type=click.IntRange(min=0), default=None, help="Override the random seed."
    )(f)
    return click.option(
        "-c",
        "--config",
        "config_path",
        type=click.Path(dir_okay=False),
        required=True,
        help="Evolution parameter file.",
    )(f)


def target_options(f):
    """Target image options."""
    f = click.option(
        "--resize", type=DimsType(), default=None, help="Resize the target image to WxH first."
    )(f)
    return click.option(
        "-t", "--target", type=click.Path(dir_okay=False), required=True, help="Target image."
    )(f)


def load_parameters(
    config_path: Optional[str], seed: Optional[int], overrides: Sequence[Tuple[str, str]]
) -> "EvolutionConfig":
    from evoart.config.parameters import load_config_file, parse_config

    text = load_config_file(config_path) if config_path else ""
    override_dict: Dict[str, str] = {}
    for key, value in overrides:
        override_dict[key] = value
    return parse_config(text, overrides=override_dict, seed=seed)


def load_target(path: str, resize: Optional["CanvasDims"]) -> "ImageBuffer":
    from evoart.core.raster import load_image

    return load_image(path, resize)
