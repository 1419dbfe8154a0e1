import os
from pathlib import Path

import pytest

from troforge.config import (
    complete_params_from_config,
    ensure_config_file,
    find_configfile,
    load_config,
)
from troforge.params import create_default_params

xdg_config = Path(os.path.expandvars(os.getenv("XDG_CONFIG_HOME", "$HOME/.config")))
configfile_xdg_config = xdg_config / "troforge.yml"


@pytest.fixture
def xdg(monkeypatch, tmp_path):
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))
    return tmp_path


def test_find_configfile(xdg):
    assert find_configfile(host="test_config") is None

    (xdg / "troforge.yml").write_text("seed: 1\n")
    assert find_configfile(host="test_config") == xdg / "troforge.yml"

    host_file = xdg / "troforge" / "test_config.yml"
    host_file.parent.mkdir()
    host_file.write_text("seed: 2\n")
    assert find_configfile(host="test_config") == host_file


def test_load_config(xdg):
    assert load_config() == {}
    path = xdg / "custom.yml"
    path.write_text("")
    assert load_config(path) == {}
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValueError):
        load_config(path)


def test_complete_params_from_config(xdg):
    path = xdg / "troforge.yml"
    path.write_text("seed: 3\noutput:\n  format: markdown\n")
    params = complete_params_from_config(create_default_params())
    assert params.seed == 3
    assert params.output.format == "markdown"


def test_ensure_config_file(xdg, capsys):
    ensure_config_file()
    created = xdg / "troforge.yml"
    assert created.exists()
    assert "Copying" in capsys.readouterr().out

    ensure_config_file()
    assert "Found configuration file" in capsys.readouterr().out

    params = complete_params_from_config(create_default_params(), created)
    assert params.caps.type1_nm == 36


@pytest.mark.skipif(
    not configfile_xdg_config.exists(), reason=f"File {configfile_xdg_config} is missing"
)
def test_user_config_is_valid():
    complete_params_from_config(create_default_params(), configfile_xdg_config)
