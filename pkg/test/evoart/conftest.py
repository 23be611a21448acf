import os
from typing import List

import numpy as np
import pytest

from evoart.core.evolution import EvolutionConfig
from evoart.core.genome import GenomeComposition
from evoart.core.mutation import MutationConfig
from evoart.core.raster import ImageBuffer, save_image
from evoart.core.types import CanvasDims, Color, Gene, ShapeKind

RESOURCES = os.path.join(os.path.dirname(__file__), "../resources/")
PARAMETERS = os.path.join(RESOURCES, "parameters")
SWEEPS = os.path.join(RESOURCES, "sweeps")

SMALL_CANVAS = CanvasDims(16, 12)


def make_rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)


def gradient_image(dims: CanvasDims) -> ImageBuffer:
    """Deterministic non-trivial target: red increases to the right, green downwards."""
    ys, xs = np.mgrid[0 : dims.height, 0 : dims.width]
    pixels = np.zeros((dims.height, dims.width, 3), dtype=np.uint8)
    pixels[:, :, 0] = (xs * 255) // max(1, dims.width - 1)
    pixels[:, :, 1] = (ys * 255) // max(1, dims.height - 1)
    pixels[:, :, 2] = 80
    return ImageBuffer(pixels)


def pixel_colors(buffer: ImageBuffer) -> List[Color]:
    """Row-major list of the pixel colors of a buffer."""
    return [Color(int(r), int(g), int(b)) for r, g, b in buffer.pixels.reshape(-1, 3)]


def polygon(vertices, color=(255, 255, 255), alpha=1.0) -> Gene:
    return Gene(ShapeKind.POLYGON, Color(*color), alpha, tuple(vertices))


def circle(center, radius, color=(255, 255, 255), alpha=1.0) -> Gene:
    return Gene(ShapeKind.CIRCLE, Color(*color), alpha, (center,), radius)


def line(p0, p1, thickness, color=(255, 255, 255), alpha=1.0) -> Gene:
    return Gene(ShapeKind.LINE, Color(*color), alpha, (p0, p1), thickness)


@pytest.fixture
def rng():
    return make_rng()


@pytest.fixture
def target():
    return gradient_image(SMALL_CANVAS)


@pytest.fixture
def target_png(tmp_path, target):
    path = str(tmp_path / "target.png")
    save_image(target, path)
    return path


@pytest.fixture
def fast_config():
    return EvolutionConfig(
        number_of_parents=2,
        children_per_parent=2,
        composition=GenomeComposition(polygons=3, circles=2, lines=1, vertices_per_polygon=4),
        mutation=MutationConfig(mutation_probability=0.3),
        save_rate=5,
        max_generations=10,
        seed=42,
    )
