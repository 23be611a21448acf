"""
Fitness: summed per-channel absolute difference between a rendered genome and the target,
and its conversion into a relative percentage of the theoretical worst score.
"""
import numpy as np

from evoart.core.genome import Genome
from evoart.core.raster import ImageBuffer, render
from evoart.core.types import CanvasDims, FitnessScore
from evoart.exceptions import DimensionMismatchError, ScoreRangeError

MAX_CHANNEL_DIFFERENCE = 255
CHANNELS = 3


def worst_score(dims: CanvasDims) -> int:
    """Theoretical worst absolute score: every channel of every pixel off by 255."""
    return MAX_CHANNEL_DIFFERENCE * CHANNELS * dims.width * dims.height


def absolute_score(rendered: ImageBuffer, target: ImageBuffer) -> int:
    """Sum of |rendered - target| over all pixels and channels (lower is better)."""
    if rendered.dims != target.dims:
        raise DimensionMismatchError(
            "Can't compare a %s image with a %s image!" % (rendered.dims, target.dims)
        )
    difference = np.abs(rendered.pixels.astype(np.int64) - target.pixels.astype(np.int64))
    return int(difference.sum(dtype=np.int64))


def relative_score(absolute: int, dims: CanvasDims) -> float:
    """
    Convert an absolute score into the percentage fitness:
    100 * (1 - absolute / worst_score(dims)).
    """
    worst = worst_score(dims)
    if absolute < 0 or absolute > worst:
        raise ScoreRangeError(
            "Absolute score %d is outside [0, %d] for a %s canvas!" % (absolute, worst, dims)
        )
    return 100.0 * (1.0 - absolute / worst)


def evaluate(rendered: ImageBuffer, target: ImageBuffer) -> FitnessScore:
    absolute = absolute_score(rendered, target)
    return FitnessScore(absolute, relative_score(absolute, target.dims))


def score(genome: Genome, target: ImageBuffer) -> FitnessScore:
    """Render a genome and score it against the target."""
    if genome.canvas != target.dims:
        raise DimensionMismatchError(
            "Genome canvas is %s but the target image is %s!" % (genome.canvas, target.dims)
        )
    return evaluate(render(genome), target)
