#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# hico documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

from unittest.mock import MagicMock


class Mock(MagicMock):
    @classmethod
    def __getattr__(cls, name):
            return MagicMock()


# numba kernels are compiled on import.
MOCK_MODULES = ['numba']
sys.modules.update((mod_name, Mock()) for mod_name in MOCK_MODULES)

sys.path.insert(0, os.path.abspath(u'../../src'))
import hico  # noqa: E402


# -- General configuration ------------------------------------------------

extensions = [
    u'sphinx.ext.autodoc',
    u'sphinx.ext.autosummary',
    u'sphinx.ext.napoleon',
    u'sphinx.ext.todo',
    u'sphinx.ext.mathjax',
    u'sphinx.ext.viewcode',
    u'sphinx.ext.intersphinx'
]

intersphinx_mapping = {
    'numpy': ('https://numpy.org/doc/stable/', None),
    'pandas': ('https://pandas.pydata.org/pandas-docs/stable/', None),
    'torch': ('https://pytorch.org/docs/stable/', None),
    'python': ('https://docs.python.org/3', None)}

autosummary_generate = True

templates_path = [u'_templates']
source_suffix = u'.rst'
master_doc = u'index'

project = u'hico'
copyright = u'2026, the hico developers'
author = u'the hico developers'

release = hico.__version__
version = hico.__version__

language = None
exclude_patterns = [u'_build']
pygments_style = u'sphinx'
todo_include_todos = True


# -- Options for HTML output ----------------------------------------------

html_theme = u'sphinx_rtd_theme'
html_static_path = [u'_static']
htmlhelp_basename = u'hicodoc'


# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}

latex_documents = [
  (master_doc, u'hico.tex', u'hico Documentation',
   author, u'manual'),
]


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, u'hico', u'hico Documentation',
     [author], 1)
]
