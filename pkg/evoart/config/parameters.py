"""
Evolution parameter files.

A parameter file is a list of `key = value` lines; `#` starts a comment. Keys are the
names in PARAMETERS, values are integers, reals or booleans (true/false, yes/no, 1/0).
Keys that aren't set keep their defaults.
"""
import logging
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Tuple

from parsimonious import Grammar, ParseError
from parsimonious.nodes import Node

from evoart.core.evolution import MAX_SEED, EvolutionConfig
from evoart.exceptions import CompositionError, ConfigParseError, ImageIOError, ParameterError

PARAMETER_GRAMMAR = Grammar(
    r"""
    document = line (newline line)*
    line = space_nn assignment? space_nn comment?
    assignment = key space_nn "=" space_nn value
    comment = "#" non_newline?

    key = ~"[A-Za-z_][A-Za-z0-9_]*"
    value = ~"[^#\s]+"

    newline = ~"\r?\n"
    non_newline = ~"[^\r\n]+"
    space_nn = ~"[ \t]*"
"""
)


class ParameterSpec(NamedTuple):
    # Location of the value inside an EvolutionConfig (attribute, then sub-attribute)
    path: Tuple[str, ...]
    kind: type
    legal_range: str
    check: Callable[[Any], bool]


def _between(low: float, high: float) -> Callable[[Any], bool]:
    return lambda v: low <= v <= high


def _at_least(low: float) -> Callable[[Any], bool]:
    return lambda v: v >= low


def _any(_: Any) -> bool:
    return True


PARAMETERS: Dict[str, ParameterSpec] = {
    "number_of_parents": ParameterSpec(("number_of_parents",), int, "[1, 100]", _between(1, 100)),
    "children_per_parent": ParameterSpec(
        ("children_per_parent",), int, "[1, 100]", _between(1, 100)
    ),
    "polygons": ParameterSpec(("composition", "polygons"), int, ">= 0", _at_least(0)),
    "circles": ParameterSpec(("composition", "circles"), int, ">= 0", _at_least(0)),
    "lines": ParameterSpec(("composition", "lines"), int, ">= 0", _at_least(0)),
    "vertices": ParameterSpec(
        ("composition", "vertices_per_polygon"), int, ">= 3", _at_least(3)
    ),
    "mutation_probability": ParameterSpec(
        ("mutation", "mutation_probability"), float, "[0, 1]", _between(0.0, 1.0)
    ),
    "genetic_restructure_rate": ParameterSpec(
        ("mutation", "genetic_restructure_rate"), float, "[0, 1]", _between(0.0, 1.0)
    ),
    "soft_mutation_rate": ParameterSpec(
        ("mutation", "soft_mutation_rate"), float, "(0, 1]", lambda v: 0.0 < v <= 1.0
    ),
    "hybrid_soft": ParameterSpec(
        ("mutation", "hybrid_soft_generations"), int, ">= 0", _at_least(0)
    ),
    "hybrid_medium": ParameterSpec(
        ("mutation", "hybrid_medium_generations"), int, ">= 0", _at_least(0)
    ),
    "chunk_mutation": ParameterSpec(("mutation", "chunk_mode"), bool, "true/false", _any),
    "crossover_mutation": ParameterSpec(("crossover_enabled",), bool, "true/false", _any),
    "gene_swap": ParameterSpec(("mutation", "gene_swap_enabled"), bool, "true/false", _any),
    "save_rate": ParameterSpec(("save_rate",), int, ">= 1", _at_least(1)),
    "max_generations": ParameterSpec(("max_generations",), int, ">= 1", _at_least(1)),
    "seed": ParameterSpec(("seed",), int, "[0, 2^64 - 1]", _between(0, MAX_SEED)),
}

_TRUE = ("true", "yes", "1")
_FALSE = ("false", "no", "0")


def _spec(key: str) -> ParameterSpec:
    try:
        return PARAMETERS[key]
    except KeyError:
        raise ParameterError(
            key, "unknown parameter, expected one of %s" % ", ".join(PARAMETERS)
        ) from None


def convert_value(key: str, text: str) -> Any:
    """Convert the textual value of a parameter into its type and check its range."""
    spec = _spec(key)
    value: Any
    if spec.kind == bool:
        if text.lower() in _TRUE:
            value = True
        elif text.lower() in _FALSE:
            value = False
        else:
            raise ParameterError(key, "%r isn't a boolean" % text, spec.legal_range)
    elif spec.kind == int:
        try:
            value = int(text)
        except ValueError:
            raise ParameterError(key, "%r isn't an integer" % text, spec.legal_range) from None
    else:
        try:
            value = float(text)
        except ValueError:
            raise ParameterError(key, "%r isn't a number" % text, spec.legal_range) from None
    check_value(key, value)
    return value


def check_value(key: str, value: Any) -> None:
    spec = _spec(key)
    # NaN fails every range check
    if not spec.check(value):
        raise ParameterError(key, "%r out of range" % value, spec.legal_range)


def get_parameter(config: EvolutionConfig, key: str) -> Any:
    result: Any = config
    for attribute in _spec(key).path:
        result = getattr(result, attribute)
    return result


def set_parameter(config: EvolutionConfig, key: str, value: Any) -> EvolutionConfig:
    """Return a copy of the config with one parameter replaced (range-checked)."""
    spec = _spec(key)
    if spec.kind == float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, spec.kind) or (spec.kind == int and isinstance(value, bool)):
        raise ParameterError(
            key, "expected a %s, got %r" % (spec.kind.__name__, value), spec.legal_range
        )
    check_value(key, value)
    if len(spec.path) == 1:
        return config._replace(**{spec.path[0]: value})
    section, attribute = spec.path
    return config._replace(**{section: getattr(config, section)._replace(**{attribute: value})})


def apply_overrides(config: EvolutionConfig, overrides: Dict[str, Any]) -> EvolutionConfig:
    """Apply a dictionary of parameter values (textual or typed) to a config."""
    for key, value in overrides.items():
        if isinstance(value, str):
            value = convert_value(key, value)
        config = set_parameter(config, key, value)
    return config


def validate_config(config: EvolutionConfig) -> EvolutionConfig:
    """Run the checks that span several parameters."""
    try:
        config.validate()
    except CompositionError as e:
        raise ParameterError("polygons", str(e), "polygons + circles + lines >= 1") from e
    return config


def _position(text: str, pos: int) -> Tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, column


def _extract_assignments(node: Node) -> List[Node]:
    if node.expr_name == "assignment":
        return [node]
    result = []
    for child in node.children:
        result.extend(_extract_assignments(child))
    return result


def parse_assignments(text: str) -> List[Tuple[str, str, int]]:
    """
    Parse a parameter file into (key, value, line) triples, in file order.

    :raises ConfigParseError: on syntax errors
    """
    try:
        tree = PARAMETER_GRAMMAR.parse(text)
    except ParseError as e:
        line, column = _position(text, e.pos)
        rest = text[e.pos :].splitlines()
        got = rest[0].strip() if rest else ""
        raise ConfigParseError(
            "expected `key = value` or a comment, got %r" % got, line, column
        ) from e

    result = []
    for assignment in _extract_assignments(tree):
        key_node, _, _, _, value_node = assignment.children
        line, _ = _position(text, assignment.start)
        result.append((key_node.text, value_node.text, line))
    return result


def parse_config(
    text: str,
    overrides: Optional[Dict[str, str]] = None,
    seed: Optional[int] = None,
    base: Optional[EvolutionConfig] = None,
) -> EvolutionConfig:
    """
    Build an EvolutionConfig out of a parameter file.

    Priority (highest to lowest):

        1. `overrides` (`--set key=value`)
        2. `seed` (`--seed`)
        3. Values in the file
        4. Defaults (`base`, EvolutionConfig() if not passed)

    :param text: Contents of the parameter file
    :param overrides: Parameter values overriding the file
    :param seed: Seed overriding the file
    :param base: Starting configuration
    :raises ConfigParseError: on syntax errors
    :raises ParameterError: on unknown keys or out-of-range values
    """
    values: Dict[str, str] = {}
    for key, value, line in parse_assignments(text):
        if key not in PARAMETERS:
            raise ParameterError(
                key,
                "unknown parameter on line %d, expected one of %s"
                % (line, ", ".join(PARAMETERS)),
            )
        if key in values:
            logging.warning(
                "Parameter %s set more than once, using the value on line %d", key, line
            )
        values[key] = value

    if seed is not None:
        values["seed"] = str(seed)
    values.update(overrides or {})

    return validate_config(apply_overrides(base or EvolutionConfig(), values))


def load_config_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise ImageIOError(path, "can't read parameter file: %s" % e.strerror) from e
