#!/usr/bin/env python

package_name = "SoboGeo"

from setuptools import setup

class Dummy:
    pass
pkginfo = Dummy()
exec(open('SoboGeo/__pkginfo__.py').read(), pkginfo.__dict__)

#################################################################

setup (name = package_name,
       version = pkginfo.__version__,
       description = "Sobolev geometry of periodic function spaces",
       long_description=
"""
SoboGeo computes with Sobolev metrics on spaces of periodic functions:
band-limited fields on the circle and their Sobolev norms, the group of
circle diffeomorphisms acting by reparametrization, geodesics of
constant-coefficient Sobolev metrics on immersed closed curves, and
geodesics of right-invariant Sobolev metrics on the diffeomorphism group
of the circle (the EPDiff and Camassa-Holm equations). Every computation
can be run as a reproducible experiment from a JSON configuration with
the sobogeo command.
""",
       license = "CeCILL-C",

       packages = ['SoboGeo'],
       python_requires = '>=3.8',
       install_requires = ['numpy>=1.17', 'scipy>=1.2'],
       extras_require = {'progress': ['progressbar2>=3.0']},
       entry_points = {
           'console_scripts': ['sobogeo = SoboGeo.Experiments:main']},

       command_options = {
           'build_sphinx': {
               'source_dir' : ('setup.py', 'Doc')}
           },
       )
