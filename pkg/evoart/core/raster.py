"""
Genotype to phenotype mapping: software rasterization of genes and alpha compositing.

Coverage is binary and evaluated at pixel centers: pixel (x, y) has its center at
(x + 0.5, y + 0.5), while gene coordinates are exact integer points. All coverage tests
are done in integer arithmetic on doubled coordinates (so pixel centers become the odd
integers 2x + 1), which makes them exact and platform-independent.
"""
import logging
import math
from typing import Optional, Sequence, Set, Tuple

import numpy as np

from evoart.core.genome import Genome
from evoart.core.types import CanvasDims, Color, Gene, Point, ShapeKind
from evoart.exceptions import ImageIOError, OutputError


class ImageBuffer:
    """Dense 24-bit RGB raster backed by a (height, width, 3) uint8 array."""

    __hash__ = None  # type: ignore

    def __init__(self, pixels: np.ndarray) -> None:
        if pixels.ndim != 3 or pixels.shape[2] != 3 or pixels.dtype != np.uint8:
            raise ValueError(
                "Expected a (height, width, 3) uint8 array, got %s %s"
                % (pixels.shape, pixels.dtype)
            )
        self.pixels = pixels

    @classmethod
    def black(cls, dims: CanvasDims) -> "ImageBuffer":
        return cls(np.zeros((dims.height, dims.width, 3), dtype=np.uint8))

    @classmethod
    def from_colors(cls, dims: CanvasDims, colors: Sequence[Color]) -> "ImageBuffer":
        """Build a buffer from a row-major list of pixel colors."""
        if len(colors) != dims.pixels:
            raise ValueError("Expected %d pixels, got %d" % (dims.pixels, len(colors)))
        array = np.array(colors, dtype=np.int64).reshape((dims.height, dims.width, 3))
        if array.min() < 0 or array.max() > 255:
            raise ValueError("Channel values must be in [0, 255]")
        return cls(array.astype(np.uint8))

    @property
    def dims(self) -> CanvasDims:
        return CanvasDims(width=self.pixels.shape[1], height=self.pixels.shape[0])

    def pixel(self, x: int, y: int) -> Color:
        r, g, b = self.pixels[y, x]
        return Color(int(r), int(g), int(b))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageBuffer):
            return NotImplemented
        return bool(np.array_equal(self.pixels, other.pixels))

    def __repr__(self) -> str:
        return "ImageBuffer(%s)" % str(self.dims)


class CoverageMask:
    """Set of pixels covered by a shape, backed by a (height, width) boolean array."""

    def __init__(self, dims: CanvasDims, covered: np.ndarray) -> None:
        assert covered.shape == (dims.height, dims.width) and covered.dtype == np.bool_
        self.dims = dims
        self.covered = covered

    @classmethod
    def empty(cls, dims: CanvasDims) -> "CoverageMask":
        return cls(dims, np.zeros((dims.height, dims.width), dtype=np.bool_))

    def indices(self) -> Set[int]:
        """Row-major indices (y * width + x) of the covered pixels."""
        return {int(i) for i in np.flatnonzero(self.covered)}

    def count(self) -> int:
        return int(self.covered.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoverageMask):
            return NotImplemented
        return self.dims == other.dims and bool(np.array_equal(self.covered, other.covered))

    __hash__ = None  # type: ignore


def _round_half_away(values: np.ndarray) -> np.ndarray:
    magnitude = np.abs(values)
    whole = np.floor(magnitude)
    rounded = whole + (magnitude - whole >= 0.5)
    return np.copysign(rounded, values)


def _round_half_away_scalar(value: float) -> int:
    magnitude = abs(value)
    whole = math.floor(magnitude)
    rounded = whole + (1 if magnitude - whole >= 0.5 else 0)
    return int(math.copysign(rounded, value))


def blend_pixel(dst: Color, src: Color, alpha: float) -> Color:
    """
    Composite `src` with opacity `alpha` over an opaque `dst`:
    alpha * src + (1 - alpha) * dst per channel, rounded half away from zero and clamped.
    """
    assert 0.0 <= alpha <= 1.0
    return Color(
        *(
            min(255, max(0, _round_half_away_scalar(alpha * s + (1.0 - alpha) * d)))
            for s, d in zip(src, dst)
        )
    )


def _blend_region(dst: np.ndarray, src: Color, alpha: float) -> np.ndarray:
    # Same operation order as blend_pixel so that both give bit-identical results
    blended = alpha * np.array(src, dtype=np.float64) + (1.0 - alpha) * dst.astype(np.float64)
    return np.clip(_round_half_away(blended), 0, 255).astype(np.uint8)


def _center_grid(
    dims: CanvasDims, x_range: Tuple[int, int], y_range: Tuple[int, int]
) -> Optional[Tuple[Tuple[int, int, int, int], np.ndarray, np.ndarray]]:
    """Doubled pixel-center coordinates of a clipped pixel box (inclusive bounds).
    Returns None if the box is off-canvas."""
    x0, x1 = max(0, x_range[0]), min(dims.width - 1, x_range[1])
    y0, y1 = max(0, y_range[0]), min(dims.height - 1, y_range[1])
    if x0 > x1 or y0 > y1:
        return None
    xs = 2 * np.arange(x0, x1 + 1, dtype=np.int64) + 1
    ys = 2 * np.arange(y0, y1 + 1, dtype=np.int64) + 1
    grid_x, grid_y = np.meshgrid(xs, ys)
    return (x0, x1, y0, y1), grid_x, grid_y


def _to_mask(
    dims: CanvasDims, box: Tuple[int, int, int, int], covered_box: np.ndarray
) -> CoverageMask:
    x0, x1, y0, y1 = box
    mask = CoverageMask.empty(dims)
    mask.covered[y0 : y1 + 1, x0 : x1 + 1] = covered_box
    return mask


def rasterize_polygon(vertices: Sequence[Point], dims: CanvasDims) -> CoverageMask:
    """
    Pixels whose centers are inside the polygon under the even-odd rule. Centers lying
    exactly on an edge count as inside.
    """
    assert len(vertices) >= 3
    points = np.asarray(vertices, dtype=np.int64)
    grid = _center_grid(
        dims,
        (int(points[:, 0].min()) - 1, int(points[:, 0].max())),
        (int(points[:, 1].min()) - 1, int(points[:, 1].max())),
    )
    if grid is None:
        return CoverageMask.empty(dims)
    box, px, py = grid

    inside = np.zeros(px.shape, dtype=np.bool_)
    on_edge = np.zeros(px.shape, dtype=np.bool_)
    doubled = [(2 * int(x), 2 * int(y)) for x, y in vertices]

    for (ax, ay), (bx, by) in zip(doubled, doubled[1:] + doubled[:1]):
        dx, dy = bx - ax, by - ay
        # Pixel centers have odd doubled coordinates and vertices even ones, so a center
        # never lies at a vertex's height: horizontal edges never toggle.
        straddles = (ay > py) != (by > py)
        if dy != 0:
            lhs = (px - ax) * dy
            rhs = dx * (py - ay)
            left_of_edge = lhs < rhs if dy > 0 else lhs > rhs
            inside ^= straddles & left_of_edge

        cross = dx * (py - ay) - dy * (px - ax)
        on_edge |= (
            (cross == 0)
            & (px >= min(ax, bx))
            & (px <= max(ax, bx))
            & (py >= min(ay, by))
            & (py <= max(ay, by))
        )

    return _to_mask(dims, box, inside | on_edge)


def rasterize_circle(center: Point, radius: int, dims: CanvasDims) -> CoverageMask:
    """Pixels whose centers are within radius + 0.5 of the circle center, clipped to the canvas."""
    assert radius >= 1
    cx, cy = center
    grid = _center_grid(dims, (cx - radius - 1, cx + radius), (cy - radius - 1, cy + radius))
    if grid is None:
        return CoverageMask.empty(dims)
    box, px, py = grid
    limit = (2 * radius + 1) ** 2
    covered = (px - 2 * cx) ** 2 + (py - 2 * cy) ** 2 <= limit
    return _to_mask(dims, box, covered)


def rasterize_line(p0: Point, p1: Point, thickness: int, dims: CanvasDims) -> CoverageMask:
    """
    Pixels whose centers are within thickness / 2 of the closed segment [p0, p1]
    (a capsule with round caps), clipped to the canvas.
    """
    assert thickness >= 1
    (x0, y0), (x1, y1) = p0, p1
    grid = _center_grid(
        dims,
        (min(x0, x1) - thickness - 1, max(x0, x1) + thickness),
        (min(y0, y1) - thickness - 1, max(y0, y1) + thickness),
    )
    if grid is None:
        return CoverageMask.empty(dims)
    box, px, py = grid

    # Doubled space: the distance threshold thickness / 2 becomes thickness.
    ax, ay, bx, by = 2 * x0, 2 * y0, 2 * x1, 2 * y1
    limit = thickness ** 2
    vx, vy = px - ax, py - ay
    to_start = vx ** 2 + vy ** 2
    dx, dy = bx - ax, by - ay
    length_sq = dx ** 2 + dy ** 2

    if length_sq == 0:
        return _to_mask(dims, box, to_start <= limit)

    projection = vx * dx + vy * dy
    to_end = (px - bx) ** 2 + (py - by) ** 2
    cross = vx * dy - vy * dx
    covered = np.where(
        projection <= 0,
        to_start <= limit,
        np.where(projection >= length_sq, to_end <= limit, cross ** 2 <= limit * length_sq),
    )
    return _to_mask(dims, box, covered)


def coverage(gene: Gene, dims: CanvasDims) -> CoverageMask:
    if gene.kind == ShapeKind.POLYGON:
        return rasterize_polygon(gene.points, dims)
    if gene.kind == ShapeKind.CIRCLE:
        return rasterize_circle(gene.center, gene.radius, dims)
    p0, p1 = gene.endpoints
    return rasterize_line(p0, p1, gene.thickness, dims)


def render(genome: Genome) -> ImageBuffer:
    """
    Render a genome: start from a black canvas and composite every gene over it in order.

    :param genome: Genome to render
    :return: Rendered image
    """
    buffer = ImageBuffer.black(genome.canvas)
    pixels = buffer.pixels
    for gene in genome.genes:
        if gene.alpha == 0.0:
            continue
        mask = coverage(gene, genome.canvas).covered
        if not mask.any():
            continue
        pixels[mask] = _blend_region(pixels[mask], gene.color, gene.alpha)
    return buffer


def load_image(path: str, resize: Optional[CanvasDims] = None) -> ImageBuffer:
    """
    Load a target image as 8-bit RGB. Images with an alpha channel (or palette
    transparency) are flattened over black.

    :param path: Path to any image format Pillow can read
    :param resize: Optionally resize the image to these dimensions
    """
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as image:
            image.load()
            has_alpha = image.mode in ("RGBA", "LA", "PA") or (
                image.mode == "P" and "transparency" in image.info
            )
            if has_alpha:
                rgba = image.convert("RGBA")
                background = Image.new("RGBA", rgba.size, (0, 0, 0, 255))
                rgb = Image.alpha_composite(background, rgba).convert("RGB")
            else:
                rgb = image.convert("RGB")
    except FileNotFoundError as e:
        raise ImageIOError(path, "file not found") from e
    except (UnidentifiedImageError, OSError) as e:
        raise ImageIOError(path, "can't read image: %s" % e) from e

    if resize is not None and (rgb.width, rgb.height) != (resize.width, resize.height):
        logging.info("Resizing %s from %dx%d to %s", path, rgb.width, rgb.height, resize)
        rgb = rgb.resize((resize.width, resize.height), Image.LANCZOS)

    return ImageBuffer(np.asarray(rgb, dtype=np.uint8).copy())


def save_image(buffer: ImageBuffer, path: str) -> None:
    """Write an image buffer as an 8-bit RGB PNG."""
    from PIL import Image

    try:
        Image.fromarray(buffer.pixels).save(path, format="PNG")
    except OSError as e:
        raise OutputError(path, "can't write image: %s" % e) from e
