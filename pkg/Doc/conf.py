# -*- coding: utf-8 -*-
#
# SoboGeo User Guide documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.
#

import sys, os

sys.path.insert(0, os.path.abspath('..'))

import SoboGeo

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode',
              'sphinx.ext.mathjax']
autodoc_default_options = {'members': True, 'show-inheritance': True}
autoclass_content = "both"

templates_path = ['_templates']
source_suffix = '.rst'
source_encoding = 'utf-8-sig'
master_doc = 'index'

project = u'SoboGeo User Guide'
copyright = u'2026, the SoboGeo developers'

version = SoboGeo.__version__
release = SoboGeo.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
htmlhelp_basename = 'SoboGeoUserGuidedoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'SoboGeoUserGuide.tex', u'SoboGeo User Guide Documentation',
   u'The SoboGeo developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'sobogeo', u'SoboGeo User Guide Documentation',
     [u'The SoboGeo developers'], 1)
]
