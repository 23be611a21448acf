"""
Command line routines for rendering and scoring genomes
"""
import json

import click

from evoart.commandline.common import DimsType


@click.command(name="render")
@click.option(
    "-g",
    "--genome",
    "genome_path",
    type=click.Path(dir_okay=False),
    required=True,
    help="Genome file.",
)
@click.option(
    "-o",
    "--out",
    "out_path",
    type=click.Path(dir_okay=False),
    required=True,
    help="PNG file to write.",
)
def render_c(genome_path, out_path):
    """
    Render a genome into a PNG image.

    The image has the dimensions of the genome's canvas.
    """
    from evoart.core.genome import load_genome
    from evoart.core.raster import render, save_image

    genome = load_genome(genome_path)
    save_image(render(genome), out_path)
    click.echo("Rendered %s to %s (%s)" % (genome_path, out_path, genome.canvas))


@click.command(name="score")
@click.option(
    "-g",
    "--genome",
    "genome_path",
    type=click.Path(dir_okay=False),
    required=True,
    help="Genome file.",
)
@click.option(
    "-t", "--target", type=click.Path(dir_okay=False), required=True, help="Target image."
)
@click.option(
    "--resize", type=DimsType(), default=None, help="Resize the target image to WxH first."
)
@click.option("-j", "--json", "as_json", is_flag=True, default=False, help="Output JSON.")
def score_c(genome_path, target, resize, as_json):
    """
    Score a genome against a target image.

    Prints one line:

    ```
    absolute_score=2885838 relative_percent=90.57
    ```

    The absolute score is the sum of the absolute differences of all color channels
    of all pixels (lower is better), the relative score expresses it as a percentage
    of the worst possible score.
    """
    from evoart.core.fitness import score
    from evoart.core.genome import load_genome
    from evoart.core.raster import load_image

    genome = load_genome(genome_path)
    result = score(genome, load_image(target, resize))
    if as_json:
        click.echo(
            json.dumps(
                {
                    "absolute_score": result.absolute,
                    "relative_percent": round(result.relative_percent, 2),
                }
            )
        )
    else:
        click.echo(
            "absolute_score=%d relative_percent=%.2f" % (result.absolute, result.relative_percent)
        )
