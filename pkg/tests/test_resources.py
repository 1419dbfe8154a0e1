from pathlib import Path

import pytest

import troforge
from troforge.resources import format_blocks, get_base_template


def test_resource():
    assert troforge.get_resource("default_configfile.yml").is_file()


@pytest.mark.parametrize(
    "name", ["envelope.md.j2", "grid.md.j2", "closure.md.j2", "radical.md.j2", "sweep.md.j2"]
)
def test_base_template(name):
    template = get_base_template(name)
    assert Path(template.filename).name == name


def test_format_blocks():
    assert format_blocks([[2, 2], [1, 1]]) == "M(2,2) + M(1,1)"
    assert format_blocks([]) == "0"
