"""Routines for exporting the configuration back into text."""
from typing import Any, List, Tuple

from evoart.config.config import get_singleton
from evoart.config.keys import ALL_KEYS, DEFAULTS, PARAMETER_DOCS, ConfigDict
from evoart.config.parameters import PARAMETERS, get_parameter
from evoart.core.evolution import EvolutionConfig

_DEFAULT_PARAMETERS = EvolutionConfig()


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    # repr() of a float is the shortest string that parses back to the same float
    return repr(value) if isinstance(value, float) else str(value)


def parameter_rows(config: EvolutionConfig) -> List[Tuple[str, str, str]]:
    """(key, value, documentation) for every evolution parameter."""
    return [
        (key, format_value(get_parameter(config, key)), PARAMETER_DOCS[key]) for key in PARAMETERS
    ]


def serialize_config(config: EvolutionConfig, include_defaults: bool = True) -> str:
    """
    Output the evolution parameters in the parameter file format. The result parses back
    into the same configuration.

    :param config: Evolution parameters
    :param include_defaults: Emit the parameter even if it's the same as the default.
    :return: Textual representation of the parameters.
    """
    result = "# evoart evolution parameters\n"
    for key in PARAMETERS:
        value = get_parameter(config, key)
        if include_defaults or value != get_parameter(_DEFAULT_PARAMETERS, key):
            result += "%s = %s\n" % (key, format_value(value))
    return result


def serialize_ambient_config(config: ConfigDict, include_defaults: bool = True) -> str:
    """Output the ambient settings as KEY=value lines."""
    result = ""
    for key in ALL_KEYS:
        value = get_singleton(config, key)
        if include_defaults or value != DEFAULTS[key]:
            result += "%s=%s\n" % (key, value)
    return result
