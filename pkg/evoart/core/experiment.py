"""
Experiment sweeps: repeated runs over a grid of values of one parameter, aggregated into
per-generation means and standard deviations.
"""
import logging
import os
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from evoart.config.parameters import PARAMETERS, apply_overrides, validate_config
from evoart.core.evolution import EvolutionConfig, RunStats, SnapshotWriter, run
from evoart.core.fitness import relative_score
from evoart.core.output import (
    AGGREGATE_HEADER,
    RAW_HEADER,
    format_decimal,
    pluralise,
    read_rows,
    write_rows,
)
from evoart.core.raster import ImageBuffer
from evoart.core.types import CanvasDims
from evoart.exceptions import (
    AggregationError,
    EvoArtError,
    ImageIOError,
    SweepRunError,
    SweepSpecError,
)

DEFAULT_REPETITIONS = 15

# Axis whose values are mappings of genome composition parameters
COMPOSITION_AXIS = "composition"
_COMPOSITION_KEYS = ("polygons", "circles", "lines", "vertices")
# Parameters that can't be swept (the seed is derived from the repetition index)
_NON_AXES = ("seed",)


class SweepPoint(NamedTuple):
    label: str
    config: EvolutionConfig


class SweepSpec(NamedTuple):
    base: EvolutionConfig
    axis: str
    values: Tuple[Any, ...]
    repetitions: int = DEFAULT_REPETITIONS

    def points(self) -> List[SweepPoint]:
        """
        Resolve the axis values into labelled configurations.

        :raises SweepSpecError: if the axis is unknown or a value is out of range.
        """
        if self.axis != COMPOSITION_AXIS and (
            self.axis not in PARAMETERS or self.axis in _NON_AXES
        ):
            raise SweepSpecError("Can't sweep over %r!" % self.axis)

        result = []
        for value in self.values:
            try:
                if self.axis == COMPOSITION_AXIS:
                    config = apply_overrides(self.base, _composition_overrides(value))
                    label = str(config.composition)
                else:
                    config = apply_overrides(self.base, {self.axis: value})
                    label = str(value)
                validate_config(config)
            except EvoArtError as e:
                raise SweepSpecError(
                    "Invalid value %r for axis %s: %s" % (value, self.axis, e)
                ) from e
            result.append(SweepPoint(label, config))
        return result

    def validate(self) -> None:
        if self.repetitions < 1:
            raise SweepSpecError("A sweep needs at least 1 repetition, got %d!" % self.repetitions)
        if not self.values:
            raise SweepSpecError("A sweep needs at least one axis value!")
        self.points()


def _composition_overrides(value: Any) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise SweepSpecError("Composition axis values must be mappings, got %r" % value)
    unknown = set(value) - set(_COMPOSITION_KEYS)
    if unknown:
        raise SweepSpecError("Unknown composition key(s) %s" % ", ".join(sorted(unknown)))
    # Gene counts that aren't mentioned are 0
    overrides: Dict[str, Any] = {"polygons": 0, "circles": 0, "lines": 0}
    overrides.update(value)
    return overrides


def _composition(polygons: int = 0, circles: int = 0, lines: int = 0) -> Dict[str, int]:
    return {"polygons": polygons, "circles": circles, "lines": lines}


def preset(name: str, base: EvolutionConfig, repetitions: int = DEFAULT_REPETITIONS) -> SweepSpec:
    """
    Built-in sweeps:

      * vertices: 3 to 20 vertices per polygon
      * polygons: 5 to 50 polygons of 8 vertices, in steps of 5
      * circles: 5 to 40 circles (no other genes), in steps of 5
      * lines: 5 to 40 lines (no other genes), in steps of 5
      * combinations: six mixed genomes of 20 genes
      * mutation_probability: 0.1 to 0.9 in steps of 0.2

    :param name: Preset name
    :param base: Parameters that aren't swept
    :param repetitions: Runs per axis value
    """
    composition = base.composition
    if name == "vertices":
        return SweepSpec(base, "vertices", tuple(range(3, 21)), repetitions)
    if name == "polygons":
        base = base._replace(composition=composition._replace(vertices_per_polygon=8))
        return SweepSpec(base, "polygons", tuple(range(5, 51, 5)), repetitions)
    if name == "circles":
        base = base._replace(composition=composition._replace(polygons=0, lines=0))
        return SweepSpec(base, "circles", tuple(range(5, 41, 5)), repetitions)
    if name == "lines":
        base = base._replace(composition=composition._replace(polygons=0, circles=0))
        return SweepSpec(base, "lines", tuple(range(5, 41, 5)), repetitions)
    if name == "combinations":
        values = (
            _composition(polygons=10, circles=10),
            _composition(polygons=15, circles=5),
            _composition(polygons=5, circles=15),
            _composition(polygons=5, circles=5, lines=10),
            _composition(polygons=10, lines=10),
            _composition(circles=10, lines=10),
        )
        return SweepSpec(base, COMPOSITION_AXIS, values, repetitions)
    if name == "mutation_probability":
        return SweepSpec(base, "mutation_probability", (0.1, 0.3, 0.5, 0.7, 0.9), repetitions)
    raise SweepSpecError("Unknown preset %r, expected one of %s" % (name, ", ".join(PRESETS)))


PRESETS = ["vertices", "polygons", "circles", "lines", "combinations", "mutation_probability"]

SWEEP_SCHEMA = {
    "type": "object",
    "required": ["axis", "values"],
    "additionalProperties": False,
    "properties": {
        "axis": {"type": "string"},
        "values": {
            "type": "array",
            "minItems": 1,
            "items": {
                "oneOf": [
                    {"type": "number"},
                    {"type": "boolean"},
                    {
                        "type": "object",
                        "additionalProperties": False,
                        "properties": {k: {"type": "integer"} for k in _COMPOSITION_KEYS},
                    },
                ]
            },
        },
        "repetitions": {"type": "integer", "minimum": 1},
    },
}


def parse_sweep_spec(document: str, base: EvolutionConfig) -> SweepSpec:
    """
    Parse a YAML sweep file, e.g.

        axis: polygons
        values: [5, 10, 15]
        repetitions: 15

    or, for mixed genomes:

        axis: composition
        values:
          - {polygons: 10, circles: 10}
          - {circles: 10, lines: 10}
    """
    import jsonschema
    import yaml
    from jsonschema.exceptions import best_match

    try:
        parsed = yaml.safe_load(document)
    except yaml.YAMLError as e:
        raise SweepSpecError("Invalid sweep file: %s" % e) from e

    error = best_match(jsonschema.Draft7Validator(SWEEP_SCHEMA).iter_errors(parsed))
    if error is not None:
        path = "/".join(str(p) for p in error.absolute_path) or "<root>"
        raise SweepSpecError("Invalid sweep file: %s at %s" % (error.message, path))

    spec = SweepSpec(
        base=base,
        axis=parsed["axis"],
        values=tuple(parsed["values"]),
        repetitions=parsed.get("repetitions", DEFAULT_REPETITIONS),
    )
    spec.validate()
    return spec


def load_sweep_spec(path: str, base: EvolutionConfig) -> SweepSpec:
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = f.read()
    except OSError as e:
        raise ImageIOError(path, "can't read sweep file: %s" % e.strerror) from e
    return parse_sweep_spec(document, base)


class SweepResult(NamedTuple):
    label: str
    runs: Tuple[RunStats, ...]


class AggregateRecord(NamedTuple):
    generation: int
    mean_absolute: float
    sd_absolute: float
    mean_relative_percent: float


class AggregateSeries(NamedTuple):
    label: str
    runs: int
    records: Tuple[AggregateRecord, ...]


class RawRecord(NamedTuple):
    axis_value: str
    repetition: int
    generation: int
    absolute_score: int
    relative_percent: float


def run_sweep(
    spec: SweepSpec,
    target: ImageBuffer,
    output_directory: Optional[str] = None,
    progress: bool = False,
    workers: int = 1,
    ascii_progress: bool = False,
) -> List[SweepResult]:
    """
    Execute every run of a sweep. Repetition r of every axis value uses the seed
    `base seed + r`.

    :param spec: Sweep specification
    :param target: Target image
    :param output_directory: If set, every run writes its snapshots into
        `<output_directory>/<axis>_<label>/rep_<r>`
    :param progress: Show a progress bar
    :param workers: Number of runs to execute in parallel
    :param ascii_progress: Draw the progress bar with ASCII characters
    :return: Statistics of every run, per axis value, in axis order
    """
    spec.validate()
    points = spec.points()
    jobs = [(point, r) for point in points for r in range(spec.repetitions)]
    logging.info(
        "Sweeping %s over %s: %s",
        spec.axis,
        ", ".join(p.label for p in points),
        pluralise("run", len(jobs)),
    )

    def _run(job: Tuple[SweepPoint, int]) -> RunStats:
        point, repetition = job
        try:
            config = point.config._replace(seed=spec.base.seed + repetition)
            writer = None
            if output_directory:
                directory = os.path.join(
                    output_directory, "%s_%s" % (spec.axis, point.label), "rep_%d" % repetition
                )
                writer = SnapshotWriter(
                    directory,
                    axis_value=point.label,
                    repetition=repetition,
                )
            return run(config, target, writer).stats
        except Exception as e:
            raise SweepRunError(point.label, repetition, e) from e

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as tpe:
            stats = list(
                tqdm(
                    tpe.map(_run, jobs),
                    total=len(jobs),
                    unit="run",
                    ascii=ascii_progress,
                    disable=not progress,
                )
            )
    else:
        stats = [
            _run(j)
            for j in tqdm(jobs, unit="run", ascii=ascii_progress, disable=not progress)
        ]

    return [
        SweepResult(point.label, tuple(stats[i * spec.repetitions : (i + 1) * spec.repetitions]))
        for i, point in enumerate(points)
    ]


def aggregate(runs: Sequence[RunStats], dims: CanvasDims, label: str = "") -> AggregateSeries:
    """
    Per-generation mean and population standard deviation of the best absolute score
    across runs. The mean relative percent is derived from the mean absolute score.

    :param runs: Statistics of runs with the same number of generations
    :param dims: Canvas dimensions of the runs' target
    :param label: Axis value the runs belong to
    """
    if not runs:
        raise AggregationError("Can't aggregate an empty list of runs!")
    lengths = {len(r.records) for r in runs}
    if len(lengths) > 1:
        raise AggregationError(
            "Can't aggregate runs of different lengths (%s generations)"
            % ", ".join(str(n) for n in sorted(lengths))
        )

    scores = np.array([r.best_series() for r in runs], dtype=np.float64)
    means = scores.mean(axis=0)
    sds = scores.std(axis=0, ddof=0)
    generations = [record.generation for record in runs[0].records]
    return AggregateSeries(
        label=label,
        runs=len(runs),
        records=tuple(
            AggregateRecord(
                generation=generation,
                mean_absolute=float(mean),
                sd_absolute=float(sd),
                mean_relative_percent=relative_score(float(mean), dims),
            )
            for generation, mean, sd in zip(generations, means, sds)
        ),
    )


def aggregate_results(results: Sequence[SweepResult], dims: CanvasDims) -> List[AggregateSeries]:
    return [aggregate(r.runs, dims, r.label) for r in results]


def write_raw_csv(results: Sequence[SweepResult], path: str) -> None:
    """One row per (axis value, repetition, generation)."""
    rows: List[List[str]] = []
    for result in results:
        for repetition, stats in enumerate(result.runs):
            rows.extend(stats.csv_rows(result.label, repetition))
    write_rows(path, RAW_HEADER, rows)


def write_aggregate_csv(series: Sequence[AggregateSeries], path: str) -> None:
    """One row per (axis value, generation)."""
    rows = [
        [
            s.label,
            str(r.generation),
            format_decimal(r.mean_absolute),
            format_decimal(r.sd_absolute),
            format_decimal(r.mean_relative_percent),
        ]
        for s in series
        for r in s.records
    ]
    write_rows(path, AGGREGATE_HEADER, rows)


def _parse_row(path: str, row: List[str], conversions: Sequence[Any]) -> List[Any]:
    if len(row) != len(conversions):
        raise ImageIOError(path, "expected %d columns, got %d" % (len(conversions), len(row)))
    try:
        return [convert(value) for convert, value in zip(conversions, row)]
    except ValueError as e:
        raise ImageIOError(path, "invalid value in row %s: %s" % (row, e)) from e


def read_raw_csv(path: str) -> List[RawRecord]:
    conversions = (str, int, int, int, float)
    return [RawRecord(*_parse_row(path, row, conversions)) for row in read_rows(path, RAW_HEADER)]


def read_aggregate_csv(path: str) -> List[AggregateSeries]:
    """Read an aggregate CSV file back into series, in file order. The number of runs
    isn't stored in the file and is reported as 0."""
    conversions = (str, int, float, float, float)
    grouped: Dict[str, List[AggregateRecord]] = OrderedDict()
    for row in read_rows(path, AGGREGATE_HEADER):
        label, *values = _parse_row(path, row, conversions)
        grouped.setdefault(label, []).append(AggregateRecord(*values))
    return [AggregateSeries(label, 0, tuple(records)) for label, records in grouped.items()]


class SummaryRow(NamedTuple):
    axis_value: str
    runs: int
    final_mean_absolute: float
    final_sd_absolute: float
    final_mean_relative_percent: float


def summarize(series: Sequence[AggregateSeries]) -> List[SummaryRow]:
    """Final-generation figures of every axis value."""
    result = []
    for s in series:
        final = s.records[-1]
        result.append(
            SummaryRow(
                axis_value=s.label,
                runs=s.runs,
                final_mean_absolute=final.mean_absolute,
                final_sd_absolute=final.sd_absolute,
                final_mean_relative_percent=final.mean_relative_percent,
            )
        )
    return result
