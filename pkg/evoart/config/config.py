from typing import Callable, Optional, Sequence

from .default_config import get_default_config_value
from .environment_config import get_environment_config_value
from .keys import ALL_KEYS, ConfigDict


def chain_getters(
    getters: Sequence[Callable[[str], Optional[str]]],
    key: str,
    default_return: Optional[str] = None,
) -> Optional[str]:
    for getter in getters:
        result = getter(key)
        if result is not None:
            return result
    return default_return


def lazy_get_config_value(key: str, default_return: Optional[str] = None) -> Optional[str]:
    """
        Get the config value for a key: the environment variable if it's set,
        otherwise the default. Return default_return for unknown keys.
    """
    return chain_getters(
        [get_environment_config_value, get_default_config_value], key, default_return
    )


def create_config_dict() -> ConfigDict:
    """
        Create and return a dict of all known config values
    """
    initial_dict = {k: lazy_get_config_value(k) for k in ALL_KEYS}
    return {k: v for k, v in initial_dict.items() if v is not None}


def patch_config(config: ConfigDict, patch: ConfigDict) -> ConfigDict:
    """
    Return a copy of the config with the keys from the patch overwritten.

    :param config: Config dictionary
    :param patch: Dictionary with the patch
    :return: New patched dictionary
    """
    result = config.copy()
    result.update(patch)
    return result


def get_singleton(config: ConfigDict, item: str) -> str:
    """Return a variable from the config."""
    return str(config[item])


def get_flag(config: ConfigDict, item: str) -> bool:
    return get_singleton(config, item).lower() in ("true", "yes", "1")


def get_int(config: ConfigDict, item: str, minimum: int = 1) -> int:
    """Return an integer variable from the config, clamped from below."""
    try:
        return max(minimum, int(get_singleton(config, item)))
    except ValueError:
        return minimum
