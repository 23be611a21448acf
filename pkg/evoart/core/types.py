from enum import Enum
from typing import NamedTuple, Optional, Tuple

Point = Tuple[int, int]


class ShapeKind(Enum):
    POLYGON = "polygon"
    CIRCLE = "circle"
    LINE = "line"


# Initial gene order inside a genome (polygons, then circles, then lines).
KIND_ORDER = (ShapeKind.POLYGON, ShapeKind.CIRCLE, ShapeKind.LINE)


class CanvasDims(NamedTuple):
    width: int
    height: int

    @property
    def pixels(self) -> int:
        return self.width * self.height

    def __str__(self) -> str:
        return "%dx%d" % (self.width, self.height)


class Color(NamedTuple):
    r: int
    g: int
    b: int


class Gene(NamedTuple):
    """
    One shape's heritable parameters.

    `points` holds the polygon vertices, the circle center (one point) or the two
    line endpoints. `size` is the circle radius or the line thickness and is None
    for polygons.
    """

    kind: ShapeKind
    color: Color
    alpha: float
    points: Tuple[Point, ...]
    size: Optional[int] = None

    @property
    def vertices(self) -> Tuple[Point, ...]:
        assert self.kind == ShapeKind.POLYGON
        return self.points

    @property
    def center(self) -> Point:
        assert self.kind == ShapeKind.CIRCLE
        return self.points[0]

    @property
    def radius(self) -> int:
        assert self.kind == ShapeKind.CIRCLE and self.size is not None
        return self.size

    @property
    def endpoints(self) -> Tuple[Point, Point]:
        assert self.kind == ShapeKind.LINE
        return self.points[0], self.points[1]

    @property
    def thickness(self) -> int:
        assert self.kind == ShapeKind.LINE and self.size is not None
        return self.size


class Violation(NamedTuple):
    """A breached gene invariant. `index` is the gene's position in the genome (None for
    genome-level problems)."""

    index: Optional[int]
    field: str
    message: str

    def __str__(self) -> str:
        where = "genome" if self.index is None else "gene %d" % self.index
        return "%s, %s: %s" % (where, self.field, self.message)


class FitnessScore(NamedTuple):
    absolute: int
    relative_percent: float


class MutationOperation(Enum):
    SOFT = "soft"
    MEDIUM = "medium"
