"""
Mutation operators.

Each mutation event picks one parameter group of a gene uniformly at random:

    * ``color``: the three color channels
    * ``alpha``: the opacity
    * ``point``: one of the gene's defining points (a polygon vertex, the circle center
      or one of the line endpoints)
    * ``size``: the circle radius or the line thickness (circles and lines only)

Soft mutation nudges the group's values within ``rate`` times their legal span, medium
mutation redraws them over their full legal range. Which of the two runs in a given
generation is decided by the hybrid schedule; which genes get mutated is decided by the
probability or chunk mutation factor.
"""
import math
from typing import List, NamedTuple

import numpy as np

from evoart.core.genome import (
    Genome,
    random_color,
    random_point,
    random_size,
    size_bounds,
)
from evoart.core.types import CanvasDims, Color, Gene, MutationOperation, ShapeKind
from evoart.exceptions import ParameterError

CHANNEL_SPAN = 256
ALPHA_SPAN = 1.0


class MutationConfig(NamedTuple):
    mutation_probability: float = 0.1
    soft_mutation_rate: float = 0.1
    hybrid_soft_generations: int = 0
    hybrid_medium_generations: int = 0
    chunk_mode: bool = False
    genetic_restructure_rate: float = 0.0
    gene_swap_enabled: bool = False

    def validate(self) -> None:
        if not 0.0 <= self.mutation_probability <= 1.0:
            raise ParameterError(
                "mutation_probability", "%r out of range" % self.mutation_probability, "[0, 1]"
            )
        if not 0.0 < self.soft_mutation_rate <= 1.0:
            raise ParameterError(
                "soft_mutation_rate", "%r out of range" % self.soft_mutation_rate, "(0, 1]"
            )
        if not 0.0 <= self.genetic_restructure_rate <= 1.0:
            raise ParameterError(
                "genetic_restructure_rate",
                "%r out of range" % self.genetic_restructure_rate,
                "[0, 1]",
            )
        for name in ("hybrid_soft_generations", "hybrid_medium_generations"):
            if getattr(self, name) < 0:
                raise ParameterError(name, "can't be negative", ">= 0")


def parameter_groups(gene: Gene) -> List[str]:
    if gene.kind == ShapeKind.POLYGON:
        return ["color", "alpha", "point"]
    return ["color", "alpha", "point", "size"]


def _clamp(value: int, low: int, high: int) -> int:
    return max(low, min(high, value))


def _soft_delta(span: float, rate: float, rng: np.random.Generator) -> float:
    return float(rng.uniform(-rate * span, rate * span))


def _soft_step(span: float, rate: float, rng: np.random.Generator) -> int:
    # Rounded half away from zero: |step| <= round(rate * span)
    delta = _soft_delta(span, rate, rng)
    return int(math.copysign(math.floor(abs(delta) + 0.5), delta))


def soft_mutate_gene(
    gene: Gene, canvas: CanvasDims, rate: float, rng: np.random.Generator
) -> Gene:
    """
    Nudge one parameter group of a gene. Every scalar in the group moves by at most
    `rate` times its legal span and is then clamped to its bounds. Integer parameters
    move by the draw rounded half away from zero.

    :param gene: Gene to mutate
    :param canvas: Canvas of the genome the gene belongs to
    :param rate: Soft mutation rate, in (0, 1]
    :param rng: Random stream
    """
    groups = parameter_groups(gene)
    group = groups[int(rng.integers(len(groups)))]

    if group == "color":
        color = Color(
            *(
                _clamp(c + _soft_step(CHANNEL_SPAN, rate, rng), 0, 255)
                for c in gene.color
            )
        )
        return gene._replace(color=color)

    if group == "alpha":
        alpha = min(1.0, max(0.0, gene.alpha + _soft_delta(ALPHA_SPAN, rate, rng)))
        return gene._replace(alpha=alpha)

    if group == "point":
        index = int(rng.integers(len(gene.points)))
        x, y = gene.points[index]
        x = _clamp(x + _soft_step(canvas.width, rate, rng), 0, canvas.width - 1)
        y = _clamp(y + _soft_step(canvas.height, rate, rng), 0, canvas.height - 1)
        points = gene.points[:index] + ((x, y),) + gene.points[index + 1 :]
        return gene._replace(points=points)

    assert gene.size is not None
    low, high = size_bounds(gene.kind, canvas)
    size = _clamp(gene.size + _soft_step(high - low + 1, rate, rng), low, high)
    return gene._replace(size=size)


def medium_mutate_gene(gene: Gene, canvas: CanvasDims, rng: np.random.Generator) -> Gene:
    """Replace one parameter group of a gene with fresh draws over its full legal range.
    The gene's kind never changes."""
    groups = parameter_groups(gene)
    group = groups[int(rng.integers(len(groups)))]

    if group == "color":
        return gene._replace(color=random_color(rng))
    if group == "alpha":
        return gene._replace(alpha=float(rng.random()))
    if group == "point":
        index = int(rng.integers(len(gene.points)))
        points = gene.points[:index] + (random_point(canvas, rng),) + gene.points[index + 1 :]
        return gene._replace(points=points)
    return gene._replace(size=random_size(gene.kind, canvas, rng))


def chunk_size(genome_length: int, probability: float) -> int:
    """Number of mutation events in chunk mode: probability * genome_length rounded half
    up, at least 1."""
    return max(1, int(math.floor(probability * genome_length + 0.5)))


def select_mutation_targets(
    genome_length: int, probability: float, chunk_mode: bool, rng: np.random.Generator
) -> List[int]:
    """
    Pick the genes that get mutated.

    In probability mode, every gene is picked independently with the given probability
    (so nothing may get picked). In chunk mode, exactly `chunk_size` indices are drawn
    with replacement: a gene can be picked (and mutated) more than once.
    """
    assert genome_length >= 1
    if chunk_mode:
        count = chunk_size(genome_length, probability)
        return [int(i) for i in rng.integers(0, genome_length, size=count)]
    picked = rng.random(genome_length) < probability
    return [int(i) for i in np.flatnonzero(picked)]


def operation_for_generation(generation: int, config: MutationConfig) -> MutationOperation:
    """
    Hybrid schedule: `hybrid_soft_generations` soft generations followed by
    `hybrid_medium_generations` medium ones, repeating. With both at 0 only soft mutation
    runs; with only the medium count set, only medium mutation runs.

    :param generation: Zero-based generation index
    """
    assert generation >= 0
    soft, medium = config.hybrid_soft_generations, config.hybrid_medium_generations
    if medium == 0:
        return MutationOperation.SOFT
    if soft == 0:
        return MutationOperation.MEDIUM
    if generation % (soft + medium) < soft:
        return MutationOperation.SOFT
    return MutationOperation.MEDIUM


def swap_genes(genome: Genome, i: int, j: int) -> Genome:
    genes = list(genome.genes)
    genes[i], genes[j] = genes[j], genes[i]
    return genome._replace(genes=tuple(genes))


def restructure_active(generation: int, max_generations: int, config: MutationConfig) -> bool:
    """Genetic restructure runs during the first tenth of the generations."""
    return config.genetic_restructure_rate > 0 and generation < max_generations / 10


def mutate_genome(
    genome: Genome,
    config: MutationConfig,
    generation: int,
    max_generations: int,
    rng: np.random.Generator,
) -> Genome:
    """
    Produce a mutated copy of a genome (the input is never modified).

    1. While genetic restructure is active, every gene additionally gets a medium
       mutation with probability `genetic_restructure_rate`.
    2. The genes picked by the probability/chunk factor get the mutation chosen by the
       hybrid schedule, once per pick.
    3. If gene swapping is enabled, with probability `mutation_probability` two distinct
       gene positions are exchanged.

    :param genome: Parent genome
    :param config: Mutation parameters
    :param generation: Zero-based generation index
    :param max_generations: Total number of generations in the run
    :param rng: Random stream
    """
    canvas = genome.canvas
    genes = list(genome.genes)

    if restructure_active(generation, max_generations, config):
        for i, gene in enumerate(genes):
            if rng.random() < config.genetic_restructure_rate:
                genes[i] = medium_mutate_gene(gene, canvas, rng)

    operation = operation_for_generation(generation, config)
    for i in select_mutation_targets(
        len(genes), config.mutation_probability, config.chunk_mode, rng
    ):
        if operation == MutationOperation.SOFT:
            genes[i] = soft_mutate_gene(genes[i], canvas, config.soft_mutation_rate, rng)
        else:
            genes[i] = medium_mutate_gene(genes[i], canvas, rng)

    result = genome._replace(genes=tuple(genes))
    if config.gene_swap_enabled and len(genes) >= 2:
        if rng.random() < config.mutation_probability:
            i, j = rng.choice(len(genes), size=2, replace=False)
            result = swap_genes(result, int(i), int(j))
    return result
