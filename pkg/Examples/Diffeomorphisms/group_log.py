# Recover the initial velocity of a group geodesic from its endpoint.
#

from SoboGeo.EPDiff import InertiaOperator, groupExp, groupLog
from SoboGeo.CircleGroup import rotation, compose, composeField, supDistance
from SoboGeo.PeriodicFields import symbolFromSpec, fromFunction
import numpy as N

# The H^2 inertia operator (1 - d^2/dtheta^2)^2
A = InertiaOperator(symbolFromSpec({'kind': 'inertia_power', 'n': 2}))
X0 = fromFunction(lambda theta: 0.2*N.cos(theta), 16)

phi1 = groupExp(X0, A, steps=64)
report = groupLog(phi1, A, steps=64, K_b=4)
print(report)
print('velocity error: %g'
      % abs(report.u.withBand(4).array - X0.withBand(4).array).max())

# Geodesics from another base point are right translates
psi = rotation(0.5)
translated = groupExp(composeField(X0, psi), A, steps=64, base=psi)
print('right translation: %g' % supDistance(translated, compose(phi1, psi)))
