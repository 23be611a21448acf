import os
from unittest import mock

import pytest

from evoart.core import experiment
from evoart.core.evolution import (
    EvolutionConfig,
    GenerationRecord,
    RunStats,
    run,
)
from evoart.core.experiment import (
    COMPOSITION_AXIS,
    DEFAULT_REPETITIONS,
    PRESETS,
    SweepResult,
    SweepSpec,
    aggregate,
    aggregate_results,
    load_sweep_spec,
    parse_sweep_spec,
    preset,
    read_aggregate_csv,
    read_raw_csv,
    run_sweep,
    summarize,
    write_aggregate_csv,
    write_raw_csv,
)
from evoart.core.output import AGGREGATE_HEADER, RAW_HEADER, read_rows, truncate_list
from evoart.core.fitness import relative_score
from evoart.core.genome import GenomeComposition
from evoart.core.types import CanvasDims
from evoart.exceptions import (
    AggregationError,
    ImageIOError,
    OutputError,
    SweepRunError,
    SweepSpecError,
)
from test.evoart.conftest import SWEEPS

CANVAS_200 = CanvasDims(200, 200)


def _stats(series, canvas=CANVAS_200):
    return RunStats(
        records=tuple(
            GenerationRecord(g, score, relative_score(score, canvas))
            for g, score in enumerate(series, start=1)
        )
    )


@pytest.fixture
def tiny_config(fast_config):
    return fast_config._replace(max_generations=3, save_rate=2)


@pytest.mark.parametrize(
    "name,size",
    [
        ("vertices", 18),
        ("polygons", 10),
        ("circles", 8),
        ("lines", 8),
        ("combinations", 6),
        ("mutation_probability", 5),
    ],
)
def test_preset_sizes(name, size):
    spec = preset(name, EvolutionConfig())
    spec.validate()
    assert len(spec.points()) == size
    assert spec.repetitions == DEFAULT_REPETITIONS


def test_presets_are_listed():
    for name in PRESETS:
        preset(name, EvolutionConfig())
    with pytest.raises(SweepSpecError):
        preset("octagons", EvolutionConfig())


def test_vertices_preset():
    spec = preset("vertices", EvolutionConfig())
    assert len(spec.points()) * spec.repetitions == 270
    assert [p.config.composition.vertices_per_polygon for p in spec.points()] == list(
        range(3, 21)
    )


def test_polygons_preset_uses_octagons():
    points = preset("polygons", EvolutionConfig()).points()
    assert [p.label for p in points] == [str(n) for n in range(5, 51, 5)]
    assert {p.config.composition.vertices_per_polygon for p in points} == {8}


def test_circles_preset_only_circles():
    points = preset("circles", EvolutionConfig()).points()
    assert points[0].config.composition == GenomeComposition(polygons=0, circles=5, lines=0)
    assert points[-1].config.composition.circles == 40


def test_combinations_preset():
    points = preset("combinations", EvolutionConfig(), repetitions=2).points()
    assert [p.label for p in points] == [
        "10P+10C",
        "15P+5C",
        "5P+15C",
        "5P+5C+10L",
        "10P+10L",
        "10C+10L",
    ]
    assert all(p.config.composition.total == 20 for p in points)


def test_mutation_probability_preset():
    points = preset("mutation_probability", EvolutionConfig()).points()
    assert [p.config.mutation.mutation_probability for p in points] == [0.1, 0.3, 0.5, 0.7, 0.9]


@pytest.mark.parametrize(
    "spec",
    [
        SweepSpec(EvolutionConfig(), "seed", (1, 2)),
        SweepSpec(EvolutionConfig(), "octagons", (1, 2)),
        SweepSpec(EvolutionConfig(), "mutation_probability", (0.5, 1.5)),
        SweepSpec(EvolutionConfig(), "polygons", (5, 2.5)),
        SweepSpec(EvolutionConfig(), "polygons", ()),
        SweepSpec(EvolutionConfig(), "polygons", (5,), repetitions=0),
        SweepSpec(EvolutionConfig(), COMPOSITION_AXIS, ({"polygons": 0},)),
        SweepSpec(EvolutionConfig(), COMPOSITION_AXIS, ({"squares": 3},)),
        SweepSpec(EvolutionConfig(), COMPOSITION_AXIS, (5,)),
    ],
)
def test_invalid_sweep_specs(spec):
    with pytest.raises(SweepSpecError):
        spec.validate()


def test_parse_sweep_spec():
    spec = parse_sweep_spec("axis: circles\nvalues: [5, 10]\n", EvolutionConfig())
    assert spec.axis == "circles"
    assert spec.values == (5, 10)
    assert spec.repetitions == DEFAULT_REPETITIONS


def test_load_sweep_spec_composition():
    spec = load_sweep_spec(os.path.join(SWEEPS, "composition.yml"), EvolutionConfig())
    assert spec.axis == COMPOSITION_AXIS
    assert spec.repetitions == 3
    assert [p.label for p in spec.points()] == ["2P+1C", "2C+1L", "3L"]


@pytest.mark.parametrize(
    "document",
    [
        "axis: [unclosed",
        "values: [1, 2]",
        "axis: polygons\nvalues: []",
        "axis: polygons\nvalues: [1]\nrepetitions: 0",
        "axis: polygons\nvalues: [1]\nextra: true",
        "axis: composition\nvalues: [{polygons: many}]",
        "- just\n- a list",
    ],
)
def test_parse_sweep_spec_errors(document):
    with pytest.raises(SweepSpecError):
        parse_sweep_spec(document, EvolutionConfig())


def test_load_sweep_spec_errors():
    with pytest.raises(SweepSpecError) as e:
        load_sweep_spec(os.path.join(SWEEPS, "invalid.yml"), EvolutionConfig())
    assert "values/1" in str(e.value)

    with pytest.raises(ImageIOError):
        load_sweep_spec(os.path.join(SWEEPS, "missing.yml"), EvolutionConfig())


def test_aggregate_identical_runs():
    series = aggregate([_stats([300, 200, 100])] * 4, CANVAS_200)
    assert series.runs == 4
    assert [r.mean_absolute for r in series.records] == [300.0, 200.0, 100.0]
    assert [r.sd_absolute for r in series.records] == [0.0, 0.0, 0.0]


def test_aggregate_mean_and_population_sd():
    series = aggregate([_stats([100, 100]), _stats([300, 100])], CANVAS_200, label="x")
    first = series.records[0]
    assert series.label == "x"
    assert first.generation == 1
    assert first.mean_absolute == 200.0
    assert first.sd_absolute == 100.0
    assert first.mean_relative_percent == relative_score(200.0, CANVAS_200)


def test_aggregate_errors():
    with pytest.raises(AggregationError):
        aggregate([], CANVAS_200)
    with pytest.raises(AggregationError):
        aggregate([_stats([3, 2, 1]), _stats([3, 2])], CANVAS_200)


def test_csv_round_trip(tmp_path):
    results = [
        SweepResult("5", (_stats(range(100, 90, -1)), _stats(range(200, 190, -1)))),
        SweepResult("10", (_stats(range(50, 40, -1)),)),
    ]
    raw_path = str(tmp_path / "raw.csv")
    write_raw_csv(results, raw_path)
    with open(raw_path) as f:
        assert len(f.read().splitlines()) == 31

    raw = read_raw_csv(raw_path)
    assert len(raw) == 30
    assert raw[0].axis_value == "5"
    assert raw[0].absolute_score == 100
    assert raw[10].repetition == 1
    assert raw[-1].axis_value == "10"
    assert raw[-1].generation == 10
    assert raw[-1].absolute_score == 41

    aggregate_path = str(tmp_path / "aggregate.csv")
    write_aggregate_csv(aggregate_results(results, CANVAS_200), aggregate_path)
    with open(aggregate_path) as f:
        lines = f.read().splitlines()
    assert len(lines) == 21
    assert lines[1].startswith("5,1,150.00,50.00,")

    series = read_aggregate_csv(aggregate_path)
    assert [s.label for s in series] == ["5", "10"]
    assert series[0].records[0].mean_absolute == 150.0
    assert series[0].records[0].sd_absolute == 50.0
    assert len(series[1].records) == 10


def test_read_csv_errors(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("some,other,header\n")
    with pytest.raises(ImageIOError):
        read_raw_csv(str(path))

    path.write_text(
        "axis_value,repetition,generation,absolute_score,relative_percent\n5,zero,1,10,99.00\n"
    )
    with pytest.raises(ImageIOError):
        read_raw_csv(str(path))

    with pytest.raises(ImageIOError):
        read_aggregate_csv(str(tmp_path / "missing.csv"))


def test_read_rows_wrong_header(tmp_path):
    path = str(tmp_path / "stats.csv")
    with open(path, "w") as f:
        f.write("some,other,header\n1,2,3\n")

    with pytest.raises(ImageIOError) as e:
        read_rows(path, RAW_HEADER)
    assert e.value.path == path
    assert "axis_value,repetition,generation" in str(e.value)

    with pytest.raises(ImageIOError):
        read_rows(path, AGGREGATE_HEADER)

    with open(path, "w") as f:
        f.write("")
    with pytest.raises(ImageIOError):
        read_rows(path, RAW_HEADER)


def test_truncate_list():
    assert truncate_list([1, 2, 3]) == "1,2,3"
    assert truncate_list(list(range(12))) == "0,1,2,3,4,5,6,7,8,9, ..."
    assert truncate_list(["a", "b", "c"], max_entries=2) == "a,b, ..."


def test_write_csv_error(tmp_path):
    with pytest.raises(OutputError):
        write_raw_csv([], str(tmp_path / "missing_dir" / "raw.csv"))


def test_summarize():
    series = aggregate_results(
        [SweepResult("5", (_stats([300, 200]), _stats([100, 100])))], CANVAS_200
    )
    (row,) = summarize(series)
    assert row.axis_value == "5"
    assert row.runs == 2
    assert row.final_mean_absolute == 150.0
    assert row.final_sd_absolute == 50.0


def test_run_sweep(target, tiny_config):
    spec = SweepSpec(tiny_config, "polygons", (1, 2), repetitions=2)
    results = run_sweep(spec, target)
    assert [r.label for r in results] == ["1", "2"]
    assert all(len(r.runs) == 2 for r in results)
    assert all(len(stats.records) == 3 for r in results for stats in r.runs)

    # Repetition r runs with the base seed + r
    config = tiny_config._replace(
        composition=tiny_config.composition._replace(polygons=2), seed=tiny_config.seed + 1
    )
    assert results[1].runs[1].records == run(config, target).stats.records


def test_run_sweep_deterministic_and_parallel(target, tiny_config):
    spec = SweepSpec(tiny_config, "mutation_probability", (0.1, 0.9), repetitions=2)
    sequential = run_sweep(spec, target)
    again = run_sweep(spec, target)
    parallel = run_sweep(spec, target, workers=3)
    records = [[s.records for s in r.runs] for r in sequential]
    assert records == [[s.records for s in r.runs] for r in again]
    assert records == [[s.records for s in r.runs] for r in parallel]


def test_run_sweep_snapshots(tmp_path, target, tiny_config):
    spec = SweepSpec(tiny_config, COMPOSITION_AXIS, ({"circles": 2},), repetitions=2)
    out = str(tmp_path / "sweep")
    run_sweep(spec, target, output_directory=out)
    for repetition in range(2):
        directory = os.path.join(out, "composition_2C", "rep_%d" % repetition)
        assert os.path.exists(os.path.join(directory, "stats.csv"))
        assert os.path.exists(os.path.join(directory, "gen_2", "parent_0.genome.json"))
        assert os.path.exists(os.path.join(directory, "gen_3", "parent_1.png"))


def test_run_sweep_failure(target, tiny_config):
    spec = SweepSpec(tiny_config, "polygons", (1, 2), repetitions=1)
    with mock.patch.object(
        experiment, "run", side_effect=OutputError("/out", "disk full")
    ), pytest.raises(SweepRunError) as e:
        run_sweep(spec, target)
    assert e.value.axis_value == "1"
    assert e.value.repetition == 0
    assert isinstance(e.value.reason, OutputError)
