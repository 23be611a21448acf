""" The CONFIG object is created and exported once __at import time__
    Calling CONFIG["KEY"] directly should be sufficient in most cases,
    except when a config value has changed since importing CONFIG.
    In that case, create_config_dict() can provide an updated config dict

    These are ambient settings (logging, progress output, threads) that never
    change evolution results. Evolution parameters live in evoart.config.parameters.

    Priority (highest to lowest):

        1. Environment variable values
        2. DEFAULTS (see keys.py)

"""
from .config import create_config_dict, get_flag, get_int, get_singleton

CONFIG = create_config_dict()

EVOART_LOGLEVEL = get_singleton(CONFIG, "EVOART_LOGLEVEL")
EVOART_PROGRESS = get_flag(CONFIG, "EVOART_PROGRESS")
EVOART_CMD_ASCII = get_flag(CONFIG, "EVOART_CMD_ASCII")
EVOART_WORKERS = get_int(CONFIG, "EVOART_WORKERS")
