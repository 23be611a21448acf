import logging
import os
from contextlib import contextmanager
from unittest.mock import patch

import pytest

from evoart.config import create_config_dict, get_flag, get_int, keys
from evoart.config.config import patch_config
from evoart.config.environment_config import get_environment_config_value
from evoart.config.export import format_value, serialize_ambient_config, serialize_config
from evoart.config.parameters import (
    PARAMETERS,
    get_parameter,
    load_config_file,
    parse_assignments,
    parse_config,
    set_parameter,
)
from evoart.core.evolution import EvolutionConfig
from evoart.core.genome import GenomeComposition
from evoart.core.mutation import MutationConfig
from evoart.exceptions import ConfigParseError, ImageIOError, ParameterError
from test.evoart.conftest import PARAMETERS as PARAMETERS_DIR


@contextmanager
def patch_os_environ(update):
    # Inject some extra values into the environment for the duration of a test
    mock_environ = os.environ.copy()
    mock_environ.update(update)
    with patch.object(os, "environ", mock_environ):
        yield


def _read(name):
    return load_config_file(os.path.join(PARAMETERS_DIR, name))


def test_every_key_has_docs():
    for key in keys.ALL_KEYS:
        assert key in keys.KEY_DOCS


def test_every_parameter_has_docs():
    for key in PARAMETERS:
        assert key in keys.PARAMETER_DOCS
    assert set(keys.PARAMETER_DOCS) == set(PARAMETERS)


def test_environment_overrides_defaults():
    assert create_config_dict()["EVOART_CMD_ASCII"] == "false"
    with patch_os_environ({"EVOART_CMD_ASCII": "true", "EVOART_WORKERS": "4"}):
        assert get_environment_config_value("EVOART_WORKERS") == "4"
        config = create_config_dict()
        assert get_flag(config, "EVOART_CMD_ASCII")
        assert get_int(config, "EVOART_WORKERS") == 4


def test_get_int_clamps():
    config = create_config_dict()
    assert get_int(patch_config(config, {"EVOART_WORKERS": "0"}), "EVOART_WORKERS") == 1
    assert get_int(patch_config(config, {"EVOART_WORKERS": "many"}), "EVOART_WORKERS") == 1


def test_patch_config():
    config = create_config_dict()
    patched = patch_config(config, {"EVOART_LOGLEVEL": "DEBUG"})
    assert patched["EVOART_LOGLEVEL"] == "DEBUG"
    assert patched is not config
    assert set(patched) == set(config)


def test_serialize_ambient_config():
    config = patch_config(create_config_dict(), {"EVOART_WORKERS": "3"})
    assert "EVOART_WORKERS=3\n" in serialize_ambient_config(config, include_defaults=False)
    assert "EVOART_CMD_ASCII=" in serialize_ambient_config(config)


def test_parse_empty_file():
    assert parse_config("") == EvolutionConfig()
    assert parse_config("# nothing but comments\n\n   \n") == EvolutionConfig()


def test_parse_file():
    config = parse_config(_read("small.cfg"))
    assert config == EvolutionConfig(
        number_of_parents=2,
        children_per_parent=2,
        composition=GenomeComposition(polygons=3, circles=2, lines=1, vertices_per_polygon=4),
        mutation=MutationConfig(mutation_probability=0.3),
        save_rate=5,
        max_generations=10,
        seed=42,
    )


def test_parse_assignments_lines():
    assert parse_assignments("a = 1\n\n  b=2 # two\r\nc =yes") == [
        ("a", "1", 1),
        ("b", "2", 3),
        ("c", "yes", 4),
    ]


@pytest.mark.parametrize(
    "text,key",
    [
        ("number_of_parents = 1.5", "number_of_parents"),
        ("number_of_parents = 0", "number_of_parents"),
        ("children_per_parent = 101", "children_per_parent"),
        ("mutation_probability = 1.01", "mutation_probability"),
        ("mutation_probability = nan", "mutation_probability"),
        ("soft_mutation_rate = 0", "soft_mutation_rate"),
        ("chunk_mutation = maybe", "chunk_mutation"),
        ("seed = -1", "seed"),
        ("polygons = 0", "polygons"),
    ],
)
def test_parse_out_of_range(text, key):
    with pytest.raises(ParameterError) as e:
        parse_config(text)
    assert e.value.key == key


def test_parse_unknown_key():
    with pytest.raises(ParameterError) as e:
        parse_config(_read("unknown_key.cfg"))
    assert e.value.key == "number_of_parent"
    assert "line 3" in str(e.value)


def test_parse_syntax_error():
    with pytest.raises(ConfigParseError) as e:
        parse_config(_read("invalid.cfg"))
    assert e.value.line == 2
    assert e.value.column == 1


def test_parse_duplicate_key(caplog):
    with caplog.at_level(logging.WARNING):
        config = parse_config("circles = 2\ncircles = 7\n")
    assert config.composition.circles == 7
    assert "circles" in caplog.text
    assert "line 2" in caplog.text


@pytest.mark.parametrize(
    "text,expected",
    [("true", True), ("Yes", True), ("1", True), ("false", False), ("NO", False), ("0", False)],
)
def test_parse_booleans(text, expected):
    assert parse_config("gene_swap = %s" % text).mutation.gene_swap_enabled is expected


def test_parse_precedence():
    text = "circles = 20\nseed = 3\n"
    assert parse_config(text).composition.circles == 20
    assert parse_config(text, overrides={"circles": "5"}).composition.circles == 5
    assert parse_config(text, seed=10).seed == 10
    assert parse_config(text, overrides={"seed": "11"}, seed=10).seed == 11


def test_parse_zero_generation_counts():
    config = parse_config("hybrid_soft = 0\nhybrid_medium = 0\ngenetic_restructure_rate = 0")
    assert config.mutation.hybrid_soft_generations == 0
    assert config.mutation.genetic_restructure_rate == 0.0


def test_set_parameter_types():
    config = set_parameter(EvolutionConfig(), "mutation_probability", 1)
    assert get_parameter(config, "mutation_probability") == 1.0
    with pytest.raises(ParameterError):
        set_parameter(EvolutionConfig(), "polygons", True)
    with pytest.raises(ParameterError):
        set_parameter(EvolutionConfig(), "no_such_key", 1)


def test_serialize_config_round_trip():
    config = parse_config(
        _read("small.cfg"),
        overrides={
            "mutation_probability": "0.1234567891",
            "chunk_mutation": "yes",
            "hybrid_soft": "2",
            "hybrid_medium": "1",
        },
    )
    text = serialize_config(config)
    assert text.startswith("# evoart evolution parameters\n")
    assert "chunk_mutation = true\n" in text
    assert parse_config(text) == config

    assert parse_config(serialize_config(config, include_defaults=False)) == config
    assert serialize_config(EvolutionConfig(), include_defaults=False).count("=") == 0


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(0.1) == "0.1"
    assert format_value(20) == "20"


def test_load_config_file_missing():
    with pytest.raises(ImageIOError):
        _read("missing.cfg")
