"""
Full-length runs checked against expected score bands. Each run takes minutes: these only
run if EVOART_REPRODUCTION_TARGET points to a 200x200 target image (e.g. a portrait crop).
"""
import filecmp
import os

import pytest

from evoart.config import EVOART_WORKERS
from evoart.core.evolution import EvolutionConfig, SnapshotWriter, run
from evoart.core.experiment import SweepSpec, aggregate, run_sweep
from evoart.core.fitness import score
from evoart.core.genome import GenomeComposition, load_genome
from evoart.core.output import RAW_HEADER, read_rows
from evoart.core.raster import load_image
from evoart.core.types import CanvasDims

TARGET = os.environ.get("EVOART_REPRODUCTION_TARGET")
CANVAS_200 = CanvasDims(200, 200)
REPETITIONS = 5

pytestmark = [
    pytest.mark.reproduction,
    pytest.mark.skipif(TARGET is None, reason="EVOART_REPRODUCTION_TARGET isn't set"),
]


def _config(polygons=0, circles=0, lines=0):
    return EvolutionConfig(
        composition=GenomeComposition(
            polygons=polygons, circles=circles, lines=lines, vertices_per_polygon=8
        ),
        save_rate=1000,
        max_generations=10000,
        seed=1,
    )


def _final_mean(results):
    series = aggregate(results[0].runs, CANVAS_200)
    return series.records[-1].mean_relative_percent


@pytest.fixture(scope="module")
def target():
    return load_image(TARGET, resize=CANVAS_200)


@pytest.fixture(scope="module")
def polygon_sweep(target, tmp_path_factory):
    out = str(tmp_path_factory.mktemp("polygons"))
    spec = SweepSpec(_config(polygons=20), "polygons", (20,), REPETITIONS)
    return out, run_sweep(spec, target, output_directory=out, workers=EVOART_WORKERS)


def _assert_elitism(results):
    for result in results:
        for stats in result.runs:
            series = stats.best_series()
            assert all(later <= earlier for earlier, later in zip(series, series[1:]))


def test_polygons(polygon_sweep):
    _, results = polygon_sweep
    _assert_elitism(results)
    assert _final_mean(results) >= 88.5

    # The spread across repetitions flattens out later in the runs
    series = aggregate(results[0].runs, CANVAS_200)
    half = len(series.records) // 2
    assert series.records[-1].sd_absolute <= max(r.sd_absolute for r in series.records[:half])


def test_polygon_checkpoints_rescore(polygon_sweep, target):
    out, results = polygon_sweep
    for repetition in range(REPETITIONS):
        directory = os.path.join(out, "polygons_20", "rep_%d" % repetition)
        rows = read_rows(os.path.join(directory, "stats.csv"), RAW_HEADER)
        logged = {int(r[2]): int(r[3]) for r in rows}
        for generation in range(1000, 10001, 1000):
            genome = load_genome(
                os.path.join(directory, "gen_%d" % generation, "parent_0.genome.json")
            )
            assert score(genome, target).absolute == logged[generation]


def test_polygon_run_is_deterministic(polygon_sweep, target, tmp_path):
    out, _ = polygon_sweep
    writer = SnapshotWriter(str(tmp_path), axis_value="20", repetition=0)
    run(_config(polygons=20), target, writer)
    original = os.path.join(out, "polygons_20", "rep_0")
    assert filecmp.cmp(
        os.path.join(original, "stats.csv"), os.path.join(str(tmp_path), "stats.csv"), False
    )
    assert filecmp.cmp(
        os.path.join(original, "gen_10000", "parent_0.genome.json"),
        os.path.join(str(tmp_path), "gen_10000", "parent_0.genome.json"),
        False,
    )


def test_lines_are_weaker(polygon_sweep, target):
    _, polygon_results = polygon_sweep
    spec = SweepSpec(_config(lines=40), "lines", (40,), REPETITIONS)
    results = run_sweep(spec, target, workers=EVOART_WORKERS)
    _assert_elitism(results)
    mean = _final_mean(results)
    assert 78.0 <= mean <= 88.0
    assert mean < _final_mean(polygon_results)


def test_circles(target):
    spec = SweepSpec(_config(circles=15), "circles", (15,), REPETITIONS)
    results = run_sweep(spec, target, workers=EVOART_WORKERS)
    _assert_elitism(results)
    assert _final_mean(results) >= 88.0
