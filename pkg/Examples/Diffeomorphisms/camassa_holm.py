# Camassa-Holm flow: geodesics of the right-invariant H^1 metric
# on the diffeomorphism group of the circle.
#

from SoboGeo.EPDiff import InertiaOperator, eulerArnoldIntegrate, \
                           momentumConservationResidual
from SoboGeo.PeriodicFields import symbolFromSpec, fromFunction
from SoboGeo.ProgressOutput import ProgressOutput
import numpy as N
import sys

A = InertiaOperator(symbolFromSpec({'kind': 'inertia_power', 'n': 1}))
u0 = fromFunction(lambda theta: 0.3*N.cos(theta) + 0.1*N.sin(2*theta), 64)

geodesic = eulerArnoldIntegrate(u0, A, T=2., steps=400,
                                actions=[ProgressOutput(400)])

print('energy drift %g, momentum residual %g'
      % (geodesic.energyDrift(), momentumConservationResidual(geodesic)))

# Velocity and flow at the checkpoints as a table
geodesic.writeCSV(sys.stdout)
