"""Utility for configuration files

User defaults are read from a YAML file, looked up at

- ``$XDG_CONFIG_HOME/troforge/<host>.yml``
- ``$XDG_CONFIG_HOME/troforge.yml``

with ``XDG_CONFIG_HOME`` defaulting to ``$HOME/.config``.

"""

import os
import shutil
from pathlib import Path
from socket import gethostname

import yaml

from . import get_resource
from .log import logger
from .params import complete_params_from_dict


def _xdg_config():
    return Path(os.path.expandvars(os.getenv("XDG_CONFIG_HOME", "$HOME/.config")))


def _config_candidates(host=None):
    host = host or os.getenv("GITHUB_WORKFLOW", gethostname())
    xdg_config = _xdg_config()
    return [xdg_config / f"troforge/{host}.yml", xdg_config / "troforge.yml"]


def find_configfile(host=None):
    """Path of the user configuration file, or None.

    Parameters
    ----------
    host: str
        Override hostname detection and specify it instead

    """
    for configfile in _config_candidates(host):
        if configfile.exists():
            return configfile
    return None


def load_config(path=None):
    """Load a YAML configuration as a dictionary (empty when no file is found)."""
    path = Path(path) if path else find_configfile()
    if path is None:
        return {}
    with path.open() as file:
        config = yaml.safe_load(file)
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ValueError(f"{path}: expected a mapping, got {type(config).__name__}")
    logger.debug(f"Configuration loaded from {path}")
    return config


def complete_params_from_config(params, path=None):
    """Merge the user configuration file into ``params``."""
    complete_params_from_dict(params, load_config(path))
    return params


def ensure_config_file():
    """Ensure that a configuration file is present.

    This function is used by the console script `troforge-generate-config`.
    """
    config_files = [path for path in _config_candidates() if path.exists()]
    configfile_xdg_config = _config_candidates()[-1]

    if not config_files:
        print("No user config file found")
        configfile_default = Path(get_resource("default_configfile.yml"))
        print(f"Copying {configfile_default} to {configfile_xdg_config}")
        configfile_xdg_config.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(configfile_default, configfile_xdg_config)
    else:
        print(f"Found configuration file {config_files[0]}")
