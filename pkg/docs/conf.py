# -*- coding: utf-8 -*-
#
# hitkernel documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'numpydoc',
]

# see http://stackoverflow.com/q/12206334/562769
numpydoc_show_class_members = False

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'hitkernel'
copyright = u'2026, hitkernel contributors'

import hitkernel

# The short X.Y version.
version = '.'.join(hitkernel.__version__.split('.', 2)[:2])
# The full version, including alpha/beta/rc tags.
release = hitkernel.__version__

exclude_patterns = ['_build']

pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

if os.environ.get('READTHEDOCS') != 'True':
    try:
        import sphinx_rtd_theme
    except ImportError:
        pass  # assume we have sphinx >= 1.3
    else:
        html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
    html_theme = 'sphinx_rtd_theme'

htmlhelp_basename = 'hitkerneldoc'

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    ('index', 'hitkernel.tex', u'hitkernel Documentation',
     u'hitkernel contributors', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'hitkernel', u'hitkernel Documentation',
     [u'hitkernel contributors'], 1)
]
