# -*- coding: utf-8 -*-
#
# jcentropy documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here.
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'sphinx.ext.mathjax',
              'sphinx_gallery.gen_gallery']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'jcentropy'
copyright = u'jcentropy contributors'

import jcentropy
# The short X.Y version and the full version.
version = release = jcentropy.__version__

exclude_patterns = ['_build']

pygments_style = 'sphinx'


# -- Options for HTML output ---------------------------------------------------

html_theme = 'alabaster'

html_show_sourcelink = False

htmlhelp_basename = 'jcentropydoc'


# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'jcentropy.tex', u'jcentropy Documentation',
   u'jcentropy contributors', 'manual'),
]


# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'jcentropy', u'jcentropy Documentation',
     [u'jcentropy contributors'], 1)
]


# -- Options for sphinx gallery ------------------------------------------------

from sphinx_gallery.sorting import ExampleTitleSortKey

sphinx_gallery_conf = {
    'examples_dirs': '../tests/gallery',
    'gallery_dirs': 'gallery',
    'line_numbers': True,
    'download_all_examples': False,
    'plot_gallery': False,
    'thumbnail_size': (100, 100),
    'within_subsection_order': ExampleTitleSortKey,
}
