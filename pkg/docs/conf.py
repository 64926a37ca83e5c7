# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

# Add the project root to the path
sys.path.insert(0, os.path.abspath(".."))

# -- Project information -----------------------------------------------------

project = "perclab"
copyright = "2025, perclab developers"
author = "perclab developers"
release = "0.1.0"

# -- General configuration ----------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx.ext.intersphinx",
]

autodoc_type_aliases = {
    "TextIO": "typing.TextIO",
    "Optional": "typing.Optional",
    "List": "typing.List",
    "Dict": "typing.Dict",
    "Tuple": "typing.Tuple",
}

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = []

html_theme_options = {
    "prev_next_buttons_location": "bottom",
    "collapse_navigation": True,
    "sticky_navigation": True,
    "navigation_depth": 4,
}

# -- Extension configuration -------------------------------------------------

# Napoleon settings for Google-style docstrings
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_init_with_doc = False
napoleon_include_private_with_doc = False

# Autodoc settings
autodoc_member_order = "bysource"
autodoc_default_options = {
    "members": True,
    "undoc-members": False,
    "show-inheritance": True,
    "imported-members": False,
}
autodoc_typehints = "description"


def autodoc_skip_member(app, what, name, obj, skip, options):
    """Skip private members during autodoc."""
    if name.startswith("_"):
        return True
    return skip


def setup(app):
    """Setup function for Sphinx."""
    app.connect("autodoc-skip-member", autodoc_skip_member)


intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
    "networkx": ("https://networkx.org/documentation/stable/", None),
}

# -- LaTeX output ------------------------------------------------------------

latex_documents = [
    ("index", "perclab.tex", "perclab Documentation", "perclab developers", "manual"),
]
latex_show_urls = "footnote"
latex_toplevel_sectioning = "section"
latex_elements = {
    "papersize": "a4paper",
    "pointsize": "10pt",
    "preamble": r"""
\usepackage{amssymb}
\DeclareUnicodeCharacter{210B}{$\mathcal{H}$}
\DeclareUnicodeCharacter{1D4A2}{$\mathcal{G}$}
\DeclareUnicodeCharacter{03B7}{$\eta$}
\DeclareUnicodeCharacter{222A}{$\cup$}
\DeclareUnicodeCharacter{2265}{$\geq$}
\DeclareUnicodeCharacter{2264}{$\leq$}
""",
}
