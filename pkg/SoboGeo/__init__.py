# SoboGeo initialization
#

"""
SoboGeo is the base module of the Sobolev geometry toolkit for periodic
function spaces. It contains the most common objects and all submodules:

* band-limited fields and Sobolev norms (:mod:`~SoboGeo.PeriodicFields`)
* the diffeomorphism group of the circle (:mod:`~SoboGeo.CircleGroup`)
* immersed curves and their Sobolev metrics (:mod:`~SoboGeo.CurveSpace`)
* geodesics of curves (:mod:`~SoboGeo.CurveGeodesics`)
* right-invariant metrics on circle diffeomorphisms (:mod:`~SoboGeo.EPDiff`)
* experiments and the ``sobogeo`` command (:mod:`~SoboGeo.Experiments`)
"""

__docformat__ = 'restructuredtext'

#
# Package information
#
from SoboGeo.__pkginfo__ import __version__

#
# SoboGeo core modules
#
from SoboGeo.Utility import SoboGeoError, NumericalAcceptanceError
from SoboGeo.PeriodicFields import PeriodicField, analyze, synthesize, \
                                   derivative, sobolevInner, sobolevNorm, \
                                   applyMultiplier, decayExponent
from SoboGeo.CircleGroup import CircleDiffeo, compose, composeField, invert, \
                                identity, rotation, flowOneParameter
from SoboGeo.CurveSpace import Curve, CurveTangent, MetricCoefficients
from SoboGeo.CurveGeodesics import expCurve, logCurve
from SoboGeo.EPDiff import InertiaOperator, eulerArnoldIntegrate, groupExp, \
                           groupLog
