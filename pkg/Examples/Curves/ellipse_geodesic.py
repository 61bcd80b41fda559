# Geodesic of the H^2 metric on plane curves, starting at an ellipse
# that is squeezed along its minor axis.
#

from SoboGeo.CurveSpace import Curve, MetricCoefficients, ellipse, length
from SoboGeo.CurveGeodesics import expCurve
from SoboGeo.PeriodicFields import PeriodicField
from SoboGeo.Trajectory import StandardLogOutput
import numpy as N

# The metric <u, v> = int (u.v + D_s u.D_s v + D_s^2 u.D_s^2 v) ds
metric = MetricCoefficients(2, [1., 1., 1.])

# Initial curve and velocity (0, -0.3 sin theta)
c0 = ellipse(2., 1., K=16)
velocity = N.zeros((2, 2), N.complex128)
velocity[1, 1] = 0.15j
u = c0.tangent(PeriodicField(velocity))

# Integrate and print energy every 50 steps
path = expCurve(c0, u, metric, K_b=12, steps=200,
                actions=[StandardLogOutput(50)])

c1 = Curve(path.stateField(-1))
print('relative energy drift: %g' % path.energyDrift())
print('length %.6f -> %.6f' % (length(c0), length(c1)))
