from dialogtest import version

# Sphinx configuration for the dialogtest documentation
# https://www.sphinx-doc.org/en/master/usage/configuration.html

project = "dialogtest"
copyright = "2024, the dialogtest developers"
author = "the dialogtest developers"
release = version

extensions = [
    # Documents the similarity strategies (autoxpmconfig)
    "experimaestro.sphinx",
    "sphinx_rtd_theme",
    # README and changelog are written in Markdown
    "myst_parser",
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

templates_path = ["_templates"]
exclude_patterns = []

html_theme = "sphinx_rtd_theme"
html_title = f"dialogtest {version}"

autodoc_default_options = {
    "show-inheritance": True,
    "members": True,
}
autodoc_member_order = "bysource"
napoleon_google_docstring = True
