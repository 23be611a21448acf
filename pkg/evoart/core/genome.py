"""
Heritable representation: genes, genomes, their parameter bounds, random initialization,
validation and the genome file format.

A genome is an ordered tuple of genes drawn on a canvas of fixed size. Gene order is the
render order (later genes are composited over earlier ones).
"""
import json
import logging
import math
from typing import Any, Dict, List, NamedTuple, Tuple

import numpy as np

from evoart.core.types import KIND_ORDER, CanvasDims, Color, Gene, Point, ShapeKind, Violation
from evoart.exceptions import (
    CompositionError,
    GenomeParseError,
    GenomeValidationError,
    ImageIOError,
    OutputError,
)

GENOME_FORMAT_VERSION = 1


class GenomeComposition(NamedTuple):
    polygons: int = 20
    circles: int = 0
    lines: int = 0
    vertices_per_polygon: int = 3

    @property
    def total(self) -> int:
        return self.polygons + self.circles + self.lines

    def count_of(self, kind: ShapeKind) -> int:
        return {
            ShapeKind.POLYGON: self.polygons,
            ShapeKind.CIRCLE: self.circles,
            ShapeKind.LINE: self.lines,
        }[kind]

    def validate(self) -> None:
        for name in ("polygons", "circles", "lines"):
            if getattr(self, name) < 0:
                raise CompositionError("Number of %s can't be negative!" % name)
        if self.total < 1:
            raise CompositionError("A genome needs at least one gene (polygons + circles + lines)!")
        if self.vertices_per_polygon < 3:
            raise CompositionError(
                "Polygons need at least 3 vertices, got %d!" % self.vertices_per_polygon
            )

    def __str__(self) -> str:
        parts = []
        if self.polygons:
            parts.append("%dP" % self.polygons)
        if self.circles:
            parts.append("%dC" % self.circles)
        if self.lines:
            parts.append("%dL" % self.lines)
        return "+".join(parts) or "empty"


class Genome(NamedTuple):
    canvas: CanvasDims
    genes: Tuple[Gene, ...]

    def kinds(self) -> Tuple[ShapeKind, ...]:
        return tuple(g.kind for g in self.genes)

    def composition(self) -> GenomeComposition:
        kinds = self.kinds()
        vertices = [len(g.points) for g in self.genes if g.kind == ShapeKind.POLYGON]
        return GenomeComposition(
            polygons=kinds.count(ShapeKind.POLYGON),
            circles=kinds.count(ShapeKind.CIRCLE),
            lines=kinds.count(ShapeKind.LINE),
            vertices_per_polygon=vertices[0] if vertices else 3,
        )


def radius_bounds(canvas: CanvasDims) -> Tuple[int, int]:
    return 1, int(math.ceil(max(canvas.width, canvas.height) / 2))


def thickness_bounds(canvas: CanvasDims) -> Tuple[int, int]:
    return 1, max(1, min(canvas.width, canvas.height) // 20)


def size_bounds(kind: ShapeKind, canvas: CanvasDims) -> Tuple[int, int]:
    """Bounds of the kind-specific scalar (radius or thickness)."""
    if kind == ShapeKind.CIRCLE:
        return radius_bounds(canvas)
    if kind == ShapeKind.LINE:
        return thickness_bounds(canvas)
    raise ValueError("Polygons have no size parameter!")


def point_count(kind: ShapeKind, composition: GenomeComposition) -> int:
    if kind == ShapeKind.POLYGON:
        return composition.vertices_per_polygon
    if kind == ShapeKind.CIRCLE:
        return 1
    return 2


def random_color(rng: np.random.Generator) -> Color:
    r, g, b = rng.integers(0, 256, size=3)
    return Color(int(r), int(g), int(b))


def random_point(canvas: CanvasDims, rng: np.random.Generator) -> Point:
    return int(rng.integers(0, canvas.width)), int(rng.integers(0, canvas.height))


def random_size(kind: ShapeKind, canvas: CanvasDims, rng: np.random.Generator) -> int:
    low, high = size_bounds(kind, canvas)
    return int(rng.integers(low, high + 1))


def random_gene(
    kind: ShapeKind,
    composition: GenomeComposition,
    canvas: CanvasDims,
    rng: np.random.Generator,
) -> Gene:
    """
    Create a gene of a given kind with every parameter drawn uniformly from its legal range.

    :param kind: Shape kind
    :param composition: Genome composition (only the number of polygon vertices is used)
    :param canvas: Canvas the gene is drawn on
    :param rng: Random stream
    """
    color = random_color(rng)
    alpha = float(rng.random())
    points = tuple(random_point(canvas, rng) for _ in range(point_count(kind, composition)))
    size = None if kind == ShapeKind.POLYGON else random_size(kind, canvas, rng)
    return Gene(kind=kind, color=color, alpha=alpha, points=points, size=size)


def random_genome(
    composition: GenomeComposition, canvas: CanvasDims, rng: np.random.Generator
) -> Genome:
    """
    Create a random genome: a block of polygons followed by a block of circles and
    then a block of lines.
    """
    composition.validate()
    genes = [
        random_gene(kind, composition, canvas, rng)
        for kind in KIND_ORDER
        for _ in range(composition.count_of(kind))
    ]
    return Genome(canvas=canvas, genes=tuple(genes))


def _validate_gene(index: int, gene: Gene, canvas: CanvasDims) -> List[Violation]:
    result = []

    for channel, value in zip("rgb", gene.color):
        if not 0 <= value <= 255:
            result.append(Violation(index, "color.%s" % channel, "%r outside [0, 255]" % value))

    # NaN fails both comparisons
    if not 0.0 <= gene.alpha <= 1.0:
        result.append(Violation(index, "alpha", "%r outside [0.0, 1.0]" % gene.alpha))

    if gene.kind == ShapeKind.POLYGON:
        field = "vertices"
        if len(gene.points) < 3:
            result.append(
                Violation(index, field, "polygon has %d vertices, needs 3" % len(gene.points))
            )
    elif gene.kind == ShapeKind.CIRCLE:
        field = "center"
        if len(gene.points) != 1:
            result.append(Violation(index, field, "circle needs exactly one center point"))
    else:
        field = "endpoints"
        if len(gene.points) != 2:
            result.append(Violation(index, field, "line needs exactly two endpoints"))

    for i, (x, y) in enumerate(gene.points):
        if not 0 <= x <= canvas.width - 1:
            result.append(
                Violation(
                    index, "%s[%d].x" % (field, i), "%r outside [0, %d]" % (x, canvas.width - 1)
                )
            )
        if not 0 <= y <= canvas.height - 1:
            result.append(
                Violation(
                    index, "%s[%d].y" % (field, i), "%r outside [0, %d]" % (y, canvas.height - 1)
                )
            )

    if gene.kind == ShapeKind.POLYGON:
        if gene.size is not None:
            result.append(Violation(index, "size", "polygons have no radius/thickness"))
    else:
        name = "radius" if gene.kind == ShapeKind.CIRCLE else "thickness"
        low, high = size_bounds(gene.kind, canvas)
        if gene.size is None or not low <= gene.size <= high:
            result.append(Violation(index, name, "%r outside [%d, %d]" % (gene.size, low, high)))
    return result


def validate_genome(genome: Genome) -> List[Violation]:
    """
    Check every gene of a genome against its invariants.

    :return: List of violations, empty if the genome is valid.
    """
    canvas = genome.canvas
    if canvas.width < 1 or canvas.height < 1:
        return [Violation(None, "canvas", "dimensions %s must be positive" % str(canvas))]

    result: List[Violation] = []
    if not genome.genes:
        result.append(Violation(None, "genes", "genome has no genes"))

    vertex_counts = {len(g.points) for g in genome.genes if g.kind == ShapeKind.POLYGON}
    if len(vertex_counts) > 1:
        result.append(
            Violation(
                None,
                "vertices",
                "polygons must share one vertex count, found %s" % sorted(vertex_counts),
            )
        )

    for index, gene in enumerate(genome.genes):
        result.extend(_validate_gene(index, gene, canvas))
    return result


_POINT_SCHEMA = {
    "type": "array",
    "items": {"type": "integer"},
    "minItems": 2,
    "maxItems": 2,
}

_GENE_SCHEMA = {
    "type": "object",
    "required": ["kind", "color", "alpha"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": [k.value for k in ShapeKind]},
        "color": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
        "alpha": {"type": "number"},
        "vertices": {"type": "array", "items": _POINT_SCHEMA},
        "center": _POINT_SCHEMA,
        "radius": {"type": "integer"},
        "endpoints": {"type": "array", "items": _POINT_SCHEMA, "minItems": 2, "maxItems": 2},
        "thickness": {"type": "integer"},
    },
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "polygon"}}},
            "then": {"required": ["vertices"]},
        },
        {
            "if": {"properties": {"kind": {"const": "circle"}}},
            "then": {"required": ["center", "radius"]},
        },
        {
            "if": {"properties": {"kind": {"const": "line"}}},
            "then": {"required": ["endpoints", "thickness"]},
        },
    ],
}

GENOME_SCHEMA = {
    "type": "object",
    "required": ["version", "canvas", "genes"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": GENOME_FORMAT_VERSION},
        "canvas": {
            "type": "object",
            "required": ["width", "height"],
            "additionalProperties": False,
            "properties": {"width": {"type": "integer"}, "height": {"type": "integer"}},
        },
        "genes": {"type": "array", "items": _GENE_SCHEMA},
    },
}

_KIND_FIELDS = {
    ShapeKind.POLYGON: {"vertices"},
    ShapeKind.CIRCLE: {"center", "radius"},
    ShapeKind.LINE: {"endpoints", "thickness"},
}


def _gene_to_dict(gene: Gene) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        "kind": gene.kind.value,
        "color": list(gene.color),
        "alpha": float(gene.alpha),
    }
    points = [list(p) for p in gene.points]
    if gene.kind == ShapeKind.POLYGON:
        result["vertices"] = points
    elif gene.kind == ShapeKind.CIRCLE:
        result["center"] = points[0]
        result["radius"] = gene.size
    else:
        result["endpoints"] = points
        result["thickness"] = gene.size
    return result


def _gene_from_dict(index: int, gene_dict: Dict[str, Any]) -> Gene:
    kind = ShapeKind(gene_dict["kind"])
    extra = set(gene_dict) - {"kind", "color", "alpha"} - _KIND_FIELDS[kind]
    if extra:
        raise GenomeParseError(
            "unexpected field(s) %s for %s gene at genes/%d"
            % (", ".join(repr(e) for e in sorted(extra)), kind.value, index)
        )

    color = Color(*(int(c) for c in gene_dict["color"]))
    alpha = float(gene_dict["alpha"])
    if kind == ShapeKind.POLYGON:
        points = tuple((int(x), int(y)) for x, y in gene_dict["vertices"])
        size = None
    elif kind == ShapeKind.CIRCLE:
        x, y = gene_dict["center"]
        points = ((int(x), int(y)),)
        size = int(gene_dict["radius"])
    else:
        points = tuple((int(x), int(y)) for x, y in gene_dict["endpoints"])
        size = int(gene_dict["thickness"])
    return Gene(kind=kind, color=color, alpha=alpha, points=points, size=size)


def serialize_genome(genome: Genome) -> str:
    """
    Serialize a genome into its JSON document form. Genes are written in render order.
    Alpha values are written with the shortest representation that parses back to the
    same 64-bit float.
    """
    document = {
        "version": GENOME_FORMAT_VERSION,
        "canvas": {"width": genome.canvas.width, "height": genome.canvas.height},
        "genes": [_gene_to_dict(g) for g in genome.genes],
    }
    return json.dumps(document, indent=2) + "\n"


def deserialize_genome(document: str) -> Genome:
    """
    Parse a genome document.

    :raises GenomeParseError: if the document isn't well-formed (syntax or structure).
    :raises GenomeValidationError: if the genome is well-formed but breaks gene invariants.
    """
    import jsonschema
    from jsonschema.exceptions import best_match

    if not document.strip():
        raise GenomeParseError("empty genome document", line=1, column=1)

    try:
        parsed = json.loads(document)
    except json.JSONDecodeError as e:
        raise GenomeParseError(e.msg, line=e.lineno, column=e.colno) from e

    error = best_match(jsonschema.Draft7Validator(GENOME_SCHEMA).iter_errors(parsed))
    if error is not None:
        path = "/".join(str(p) for p in error.absolute_path) or "<root>"
        raise GenomeParseError("%s at %s" % (error.message, path))

    canvas = CanvasDims(int(parsed["canvas"]["width"]), int(parsed["canvas"]["height"]))
    genes = tuple(_gene_from_dict(i, g) for i, g in enumerate(parsed["genes"]))
    genome = Genome(canvas=canvas, genes=genes)

    violations = validate_genome(genome)
    if violations:
        raise GenomeValidationError(violations)
    return genome


def load_genome(path: str) -> Genome:
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = f.read()
    except OSError as e:
        raise ImageIOError(path, "can't read genome file: %s" % e.strerror) from e
    logging.debug("Loaded genome from %s", path)
    return deserialize_genome(document)


def save_genome(genome: Genome, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(serialize_genome(genome))
    except OSError as e:
        raise OutputError(path, "can't write genome file: %s" % e.strerror) from e
