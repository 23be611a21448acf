"""
evoart command line client

Evolves images made of translucent shapes towards a target image and runs parameter sweeps.
"""

import logging

import click
import click_log
from click_log import ColorFormatter

from evoart.__version__ import __version__
from evoart.commandline.evolution import run_c, sweep_c
from evoart.commandline.images import render_c, score_c
from evoart.commandline.misc import config_c
from evoart.config import EVOART_LOGLEVEL
from evoart.exceptions import EvoArtError, get_exception_name

logger = logging.getLogger()

_CLICK_EXCEPTIONS = (click.exceptions.ClickException, click.exceptions.Abort, click.exceptions.Exit)


class EchoHandler(logging.Handler):
    """Status lines (INFO) go to stdout so that they can be piped, everything else to stderr."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            click.echo(self.format(record), err=record.levelno != logging.INFO)
        except Exception:
            self.handleError(record)


def setup_logging() -> None:
    click_log.basic_config(logger)
    handler = EchoHandler()
    handler.setFormatter(ColorFormatter())
    logger.handlers = [handler]


setup_logging()


def _strip_markup(text: str) -> str:
    return text.replace("```\n", "").replace("`", "")


def _patch_help_formatting() -> None:
    # Command docstrings use Markdown code spans, which click would print verbatim
    wrap_text = click.formatting.wrap_text
    if getattr(wrap_text, "_evoart_patched", False):
        return

    def patched(text, *args, **kwargs):
        return wrap_text(_strip_markup(text), *args, **kwargs)

    patched._evoart_patched = True  # type: ignore
    click.formatting.wrap_text = patched


class WithExceptionHandler(click.Group):
    """
    Command group that turns errors into a one-line log message and exit status 2.

    Errors raised by evoart are reported as `module.ExceptionName: message`. Anything else
    is a bug and also gets a hint on how to get the traceback. At DEBUG verbosity, the full
    traceback is always logged.
    """

    def get_command(self, ctx, cmd_name):
        # Only patch when a command actually runs, not on import.
        _patch_help_formatting()
        return super().get_command(ctx, cmd_name)

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except _CLICK_EXCEPTIONS:
            raise
        except Exception as exc:
            # click_log doesn't expose the verbosity value: check the logger instead.
            if logger.getEffectiveLevel() <= logging.DEBUG:
                logger.exception("%s: %s", get_exception_name(exc), exc)
            elif isinstance(exc, EvoArtError):
                logger.error("%s: %s", get_exception_name(exc), exc)
            else:
                logger.error(
                    "Unexpected %s: %s (rerun with -v DEBUG for the traceback)",
                    get_exception_name(exc),
                    exc,
                )
            ctx.exit(code=2)


@click.group(cls=WithExceptionHandler)
@click_log.simple_verbosity_option(logger, default=EVOART_LOGLEVEL)
@click.version_option(prog_name="evoart", version=__version__)
def cli():
    """evoart: approximate images with evolved translucent shapes."""


# Command docstrings are in the imperative mood and their first sentence is the short help.
# Commands import numpy, Pillow and the engine lazily to keep `--help` fast.

# Evolution
cli.add_command(run_c)
cli.add_command(sweep_c)

# Genomes and images
cli.add_command(render_c)
cli.add_command(score_c)

# Miscellaneous
cli.add_command(config_c)
