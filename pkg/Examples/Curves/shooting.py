# Solve the geodesic boundary value problem between a circle and a
# bumpy circle by geodesic shooting, then check the result with Exp.
#

from SoboGeo.CurveSpace import Curve, MetricCoefficients, circle, bumpyCircle
from SoboGeo.CurveGeodesics import expCurve, logCurve
from SoboGeo.Experiments import regularityReport
from SoboGeo.Trajectory import LogOutput
import sys

metric = MetricCoefficients(2, [1., 1., 1.])
c0 = circle(1., K=16)
c1 = bumpyCircle(0.05, 3, K=16)

report = logCurve(c0, c1, metric, K_b=6, steps=64, tol=1.e-9,
                  actions=[LogOutput(sys.stdout,
                                     data=['residual_norm', 'sigma_min'])])
print(report)

# Shooting from c0 with the solved velocity must reach c1
path = expCurve(c0, report.u, metric, K_b=6, steps=64)
endpoint = Curve(path.stateField(-1))
print('endpoint error: %g'
      % abs(endpoint.field.withBand(6).array
            - c1.field.withBand(6).array).max())

# Regularity of the initial velocity compared with the endpoints
print(regularityReport(report.u.field.withBand(16), k_min=4,
                       endpoints=[c0.field, c1.field])['verdict'])
