"""
The generational loop.

Every parent is an independent hill climber: each generation it produces
`children_per_parent` mutated children and the best one replaces it only if it scores
strictly better. Parents only interact through optional crossover.

Random streams are derived from the run seed per (parent, generation), so the order in
which children are produced and scored (and the number of worker threads) never changes
the results.
"""
import logging
import os
import time
from concurrent.futures import Executor, ThreadPoolExecutor
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from evoart.core.fitness import score
from evoart.core.genome import (
    Genome,
    GenomeComposition,
    random_genome,
    save_genome,
    validate_genome,
)
from evoart.core.mutation import MutationConfig, mutate_genome
from evoart.core.output import RAW_HEADER, format_decimal, pretty_duration, write_rows
from evoart.core.raster import ImageBuffer, render, save_image
from evoart.core.types import FitnessScore
from evoart.exceptions import (
    CompositionError,
    InvariantViolationError,
    OutputError,
    ParameterError,
)

MAX_PARENTS = 100
MAX_CHILDREN = 100
MAX_SEED = 2 ** 64 - 1


class EvolutionConfig(NamedTuple):
    number_of_parents: int = 1
    children_per_parent: int = 1
    composition: GenomeComposition = GenomeComposition()
    mutation: MutationConfig = MutationConfig()
    crossover_enabled: bool = False
    save_rate: int = 1000
    max_generations: int = 10000
    seed: int = 1

    def validate(self) -> None:
        if not 1 <= self.number_of_parents <= MAX_PARENTS:
            raise ParameterError(
                "number_of_parents", "%r out of range" % self.number_of_parents, "[1, 100]"
            )
        if not 1 <= self.children_per_parent <= MAX_CHILDREN:
            raise ParameterError(
                "children_per_parent", "%r out of range" % self.children_per_parent, "[1, 100]"
            )
        if self.save_rate < 1:
            raise ParameterError("save_rate", "%r out of range" % self.save_rate, ">= 1")
        if self.max_generations < 1:
            raise ParameterError(
                "max_generations", "%r out of range" % self.max_generations, ">= 1"
            )
        if not 0 <= self.seed <= MAX_SEED:
            raise ParameterError("seed", "%r out of range" % self.seed, "[0, 2^64 - 1]")
        self.composition.validate()
        self.mutation.validate()


class Individual(NamedTuple):
    genome: Genome
    score: FitnessScore


class GenerationRecord(NamedTuple):
    generation: int
    best_absolute: int
    best_relative_percent: float


class RunStats(NamedTuple):
    records: Tuple[GenerationRecord, ...]
    elapsed_seconds: float = 0.0

    def best_series(self) -> List[int]:
        return [r.best_absolute for r in self.records]

    def csv_rows(self, axis_value: str = "", repetition: int = 0) -> List[List[str]]:
        """Rows of the raw statistics CSV schema for this run."""
        return [
            [
                axis_value,
                str(repetition),
                str(r.generation),
                str(r.best_absolute),
                format_decimal(r.best_relative_percent),
            ]
            for r in self.records
        ]


class RunResult(NamedTuple):
    stats: RunStats
    population: Tuple[Individual, ...]
    evaluations: int


def initial_stream(seed: int, parent: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(seed, spawn_key=(parent, 0))
    return np.random.Generator(np.random.PCG64(sequence))


def child_streams(
    seed: int, parent: int, generation: int, children: int
) -> List[np.random.Generator]:
    """Independent streams for every child a parent produces in a (1-based) generation."""
    assert generation >= 1
    sequence = np.random.SeedSequence(seed, spawn_key=(parent, generation))
    return [np.random.Generator(np.random.PCG64(s)) for s in sequence.spawn(children)]


def crossover(main: Genome, secondary: Genome) -> Genome:
    """
    Combine two genomes: gene i of the child has the geometry of gene i of `main` and the
    color and alpha of gene i of `secondary`.

    :raises CompositionError: if the genomes have different canvases, lengths or kind counts.
    """
    if main.canvas != secondary.canvas:
        raise CompositionError(
            "Can't cross genomes on %s and %s canvases!" % (main.canvas, secondary.canvas)
        )
    if len(main.genes) != len(secondary.genes) or main.composition() != secondary.composition():
        raise CompositionError(
            "Can't cross genomes with compositions %s and %s!"
            % (main.composition(), secondary.composition())
        )
    genes = tuple(
        m._replace(color=s.color, alpha=s.alpha) for m, s in zip(main.genes, secondary.genes)
    )
    return main._replace(genes=genes)


def best_index(population: Sequence[Individual]) -> int:
    """Index of the individual with the lowest absolute score (the first one on ties)."""
    assert population
    return min(range(len(population)), key=lambda i: population[i].score.absolute)


def best(population: Sequence[Individual]) -> Individual:
    return population[best_index(population)]


def produce_child(
    parent: Individual,
    population: Sequence[Individual],
    config: EvolutionConfig,
    generation: int,
    rng: np.random.Generator,
) -> Genome:
    """
    Produce one child genome of a parent.

    :param parent: Parent individual (must be a member of `population`)
    :param population: Current population, used to pick the crossover partner
    :param config: Run configuration
    :param generation: 1-based generation the child is produced in
    :param rng: Random stream of this child
    """
    base = parent.genome
    if config.crossover_enabled and len(population) >= 2:
        index = next(i for i, ind in enumerate(population) if ind is parent)
        partner = int(rng.integers(len(population) - 1))
        if partner >= index:
            partner += 1
        base = crossover(parent.genome, population[partner].genome)
    return mutate_genome(base, config.mutation, generation - 1, config.max_generations, rng)


def evaluate_children(
    population: Sequence[Individual],
    target: ImageBuffer,
    config: EvolutionConfig,
    generation: int,
    executor: Optional[Executor] = None,
) -> List[Individual]:
    """
    Produce and score the children of every parent for one generation.

    :return: The scored children, grouped by parent in population order
    """
    jobs = [
        (p, rng)
        for p in range(len(population))
        for rng in child_streams(config.seed, p, generation, config.children_per_parent)
    ]

    def _evaluate(job: Tuple[int, np.random.Generator]) -> Individual:
        parent_index, rng = job
        genome = produce_child(population[parent_index], population, config, generation, rng)
        return Individual(genome, score(genome, target))

    if executor is not None:
        return list(executor.map(_evaluate, jobs))
    return [_evaluate(j) for j in jobs]


def select_survivors(
    population: Sequence[Individual], children: Sequence[Individual], generation: int
) -> List[Individual]:
    """Replace every parent by its best child iff that child has a strictly lower score."""
    per_parent = len(children) // len(population)
    assert per_parent * len(population) == len(children)

    new_population = []
    replaced = 0
    for p, parent in enumerate(population):
        champion = best(children[p * per_parent : (p + 1) * per_parent])
        if champion.score.absolute < parent.score.absolute:
            new_population.append(champion)
            replaced += 1
        else:
            new_population.append(parent)
    logging.debug("Generation %d: %d parent(s) replaced", generation, replaced)
    return new_population


def step(
    population: Sequence[Individual],
    target: ImageBuffer,
    config: EvolutionConfig,
    generation: int,
    executor: Optional[Executor] = None,
) -> List[Individual]:
    """
    Run one generation. Every parent produces its children, the children are scored
    and the best child replaces its parent iff it has a strictly lower absolute score.

    :param population: Current parents
    :param target: Target image
    :param config: Run configuration
    :param generation: 1-based generation index
    :param executor: Optional executor to produce and score children on
    :return: New population
    """
    children = evaluate_children(population, target, config, generation, executor)
    return select_survivors(population, children, generation)


def initial_population(config: EvolutionConfig, target: ImageBuffer) -> List[Individual]:
    result = []
    for p in range(config.number_of_parents):
        genome = random_genome(config.composition, target.dims, initial_stream(config.seed, p))
        result.append(Individual(genome, score(genome, target)))
    return result


def is_checkpoint(generation: int, config: EvolutionConfig) -> bool:
    return generation % config.save_rate == 0 or generation == config.max_generations


def check_population(population: Sequence[Individual], target: ImageBuffer) -> None:
    """Recompute every stored score from its genome and revalidate the genomes."""
    for p, individual in enumerate(population):
        violations = validate_genome(individual.genome)
        if violations:
            raise InvariantViolationError(
                "Parent %d has an invalid genome: %s" % (p, "; ".join(map(str, violations)))
            )
        recomputed = score(individual.genome, target)
        if recomputed.absolute != individual.score.absolute:
            raise InvariantViolationError(
                "Parent %d has a stored score of %d but its genome scores %d!"
                % (p, individual.score.absolute, recomputed.absolute)
            )


def _record(generation: int, population: Sequence[Individual]) -> GenerationRecord:
    champion = best(population)
    return GenerationRecord(
        generation=generation,
        best_absolute=champion.score.absolute,
        best_relative_percent=champion.score.relative_percent,
    )


class SnapshotWriter:
    """
    Writes the output of a run:

        <directory>/gen_<G>/parent_<P>.png
        <directory>/gen_<G>/parent_<P>.genome.json
        <directory>/stats.csv
        <directory>/parameters.cfg
    """

    def __init__(self, directory: str, axis_value: str = "", repetition: int = 0) -> None:
        self.directory = directory
        self.axis_value = axis_value
        self.repetition = repetition
        _ensure_directory(directory)

    def snapshot_directory(self, generation: int) -> str:
        return os.path.join(self.directory, "gen_%d" % generation)

    def write_snapshot(self, generation: int, population: Sequence[Individual]) -> None:
        directory = self.snapshot_directory(generation)
        _ensure_directory(directory)
        for p, individual in enumerate(population):
            prefix = os.path.join(directory, "parent_%d" % p)
            save_image(render(individual.genome), prefix + ".png")
            save_genome(individual.genome, prefix + ".genome.json")

    def write_parameters(self, text: str) -> None:
        path = os.path.join(self.directory, "parameters.cfg")
        try:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text)
        except OSError as e:
            raise OutputError(path, "can't write parameter file: %s" % e.strerror) from e

    def write_stats(self, stats: RunStats) -> None:
        write_rows(
            os.path.join(self.directory, "stats.csv"),
            RAW_HEADER,
            stats.csv_rows(self.axis_value, self.repetition),
        )


def _ensure_directory(directory: str) -> None:
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise OutputError(directory, "can't create output directory: %s" % e.strerror) from e
    if not os.access(directory, os.W_OK):
        raise OutputError(directory, "output directory isn't writable")


def run(
    config: EvolutionConfig,
    target: ImageBuffer,
    writer: Optional[SnapshotWriter] = None,
    progress: bool = False,
    workers: int = 1,
    ascii_progress: bool = False,
) -> RunResult:
    """
    Evolve `number_of_parents` random genomes towards the target for `max_generations`
    generations.

    :param config: Run configuration
    :param target: Target image
    :param writer: Optional sink for snapshots and statistics
    :param progress: Show a progress bar
    :param workers: Number of threads to produce and score children on
    :param ascii_progress: Draw the progress bar with ASCII characters
    :return: Run statistics, the final population and the number of child evaluations
    """
    config.validate()
    started = time.monotonic()
    population = initial_population(config, target)
    logging.info(
        "Evolving %d parent(s) with %d child(ren) each, genome %s on a %s canvas",
        config.number_of_parents,
        config.children_per_parent,
        config.composition,
        target.dims,
    )

    records: List[GenerationRecord] = []
    previous_best = best(population).score.absolute
    evaluations = 0
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        generations = tqdm(
            range(1, config.max_generations + 1),
            unit="gen",
            ascii=ascii_progress,
            disable=not progress,
        )
        for generation in generations:
            children = evaluate_children(population, target, config, generation, executor)
            evaluations += len(children)
            population = select_survivors(population, children, generation)
            record = _record(generation, population)
            if record.best_absolute > previous_best:
                raise InvariantViolationError(
                    "Best score went up from %d to %d in generation %d!"
                    % (previous_best, record.best_absolute, generation)
                )
            previous_best = record.best_absolute
            records.append(record)

            if is_checkpoint(generation, config):
                check_population(population, target)
                logging.info(
                    "Generation %d/%d: best absolute %d (%.2f%%)",
                    generation,
                    config.max_generations,
                    record.best_absolute,
                    record.best_relative_percent,
                )
                if writer:
                    writer.write_snapshot(generation, population)
                    writer.write_stats(RunStats(records=tuple(records)))
    finally:
        if executor is not None:
            executor.shutdown()

    elapsed = time.monotonic() - started
    stats = RunStats(records=tuple(records), elapsed_seconds=elapsed)
    logging.info("Finished %d generations in %s", config.max_generations, pretty_duration(elapsed))
    return RunResult(
        stats=stats,
        population=tuple(population),
        evaluations=evaluations,
    )
