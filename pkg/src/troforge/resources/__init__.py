"""Packaged resources
=====================

- ``default_configfile.yml``: copied to ``$XDG_CONFIG_HOME/troforge.yml`` by
  the console script ``troforge-generate-config``.

.. literalinclude:: ../../src/troforge/resources/default_configfile.yml
    :language: yaml

- ``envelope.md.j2``, ``grid.md.j2``, ``closure.md.j2``, ``radical.md.j2``,
  ``sweep.md.j2``: Markdown reports. See also
  :func:`troforge.output.render_markdown`.

.. literalinclude:: ../../src/troforge/resources/sweep.md.j2
    :language: jinja

"""


import jinja2


def format_blocks(blocks):
    """``[[2, 2], [1, 1]]`` -> ``"M(2,2) + M(1,1)"``."""
    if not blocks:
        return "0"
    return " + ".join(f"M({n},{m})" for n, m in blocks)


class BaseTemplates:
    @property
    def env(self):
        env = jinja2.Environment(
            loader=jinja2.PackageLoader("troforge", "resources"),
            undefined=jinja2.StrictUndefined,
            keep_trailing_newline=True,
        )
        env.filters["blocks"] = format_blocks
        return env

    def get_base_template(self, name):
        """Get a template from ``troforge.resources``."""
        return self.env.get_template(name)


_templates = BaseTemplates()

get_base_template = _templates.get_base_template
