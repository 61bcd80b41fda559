# Geodesics in the space of curves
#

import unittest
import io
import numpy as N
from SoboGeo.CurveGeodesics import GeodesicIntegrator, hamiltonian, \
                                   expCurve, dexpJacobian, logCurve, \
                                   curveExpMap
from SoboGeo.CurveSpace import Curve, CurveTangent, MetricCoefficients, \
                               metricMatrix, circle, ellipse, length, \
                               reparametrize
from SoboGeo.CircleGroup import CircleDiffeo, rotation, composeField, \
                                equivarianceResidual, \
                                transportIdentityResidual
from SoboGeo.PeriodicFields import PeriodicField, sobolevNorm
from SoboGeo.Trajectory import LogOutput
from SoboGeo.Utility import DegenerateCurveError, DimensionError, \
                            PossiblyConjugateError, IntegratorAccuracyError


def tangentField(K, modes):
    # modes: {(k, component): (cos amplitude, sin amplitude)}
    array = N.zeros((K+1, 2), N.complex128)
    for (k, component), (a, b) in modes.items():
        array[k, component] = a if k == 0 else 0.5*(a - 1j*b)
    return PeriodicField(array)


class HamiltonianTest(unittest.TestCase):

    def test_closed_form(self):
        m = MetricCoefficients(2, [1., 2., 3.])
        c = circle(1.)
        x = c.field.realCoefficients(2)
        G = metricMatrix(c, m, 2)[0]
        v = N.zeros(10)
        v[1] = 1.
        p = N.dot(G, v)
        H = hamiltonian(x, p, m)
        expected = 0.5*N.pi*(1.+2.+3.)
        self.assertTrue(abs(H-expected) <= 1.e-10*expected)
        self.assertTrue(abs(hamiltonian(x, 3.*p, m) - 9.*H) <= 1.e-10*H)

    def test_degenerate(self):
        m = MetricCoefficients(2, [1., 1., 1.])
        self.assertRaises(DegenerateCurveError, hamiltonian, N.zeros(10),
                          N.zeros(10), m)


class ExpTest(unittest.TestCase):

    metric = MetricCoefficients(2, [1., 1., 1.])

    def test_zero_velocity(self):
        c = circle(1.)
        u = CurveTangent(PeriodicField(N.zeros((9, 2))), c)
        path = expCurve(c, u, self.metric, K_b=4, steps=16)
        self.assertEqual(len(path), 17)
        self.assertEqual(N.max(N.abs(path.states - path.states[0])), 0.)
        self.assertEqual(path.energyDrift(), 0.)
        self.assertTrue(N.allclose(path.states[-1],
                                   c.field.realCoefficients(4)))

    def test_energy_conservation(self):
        c = ellipse(2., 1.)
        u = c.tangent(tangentField(1, {(1, 1): (0.3, 0.)}))
        path = expCurve(c, u, self.metric, K_b=8, steps=100)
        self.assertTrue(path.energyDrift() <= 1.e-6)
        self.assertTrue(path.energy_trace[0] > 0.)
        exponents = path.regularityAlong(4)
        self.assertEqual(len(exponents), 101)
        self.assertEqual(exponents[0], N.inf)
        self.assertAlmostEqual(length(path.stateAt(0)), length(c), 12)
        self.assertTrue(isinstance(path.endpoint(), Curve))
        H = hamiltonian(path.states[-1], path.momenta[-1], self.metric)
        self.assertAlmostEqual(H/path.energy_trace[-1], 1., 14)

    def test_time_reversal(self):
        c = ellipse(2., 1.)
        u = c.tangent(tangentField(1, {(1, 1): (0.3, 0.)}))
        integrator = GeodesicIntegrator(self.metric, K_b=6, steps=64)
        system, x0 = integrator.system(c)
        path = integrator.integrateState(
            system, x0, system.momentum(x0, u.field.realCoefficients(6)))
        back = integrator.integrateState(system, path.states[-1],
                                         -path.momenta[-1])
        self.assertTrue(N.max(N.abs(back.states[-1] - x0)) <= 1.e-6)

    def test_translation_invariance(self):
        # the metric does not depend on the position of the curve, so
        # the total momentum of every component is conserved
        c = ellipse(2., 1.)
        u = c.tangent(tangentField(2, {(0, 0): (0.2, 0.),
                                       (2, 1): (0.1, 0.05)}))
        integrator = GeodesicIntegrator(self.metric, K_b=4, steps=32)
        system, x0 = integrator.system(c)
        v0 = u.field.realCoefficients(4)
        gradient = system.gradient(x0, v0)
        nb = system.discretization.nb
        self.assertEqual(gradient[0], 0.)
        self.assertEqual(gradient[nb], 0.)
        path = integrator.integrateState(system, x0, system.momentum(x0, v0))
        for i in [0, nb]:
            self.assertTrue(N.max(N.abs(path.momenta[:, i]
                                        - path.momenta[0, i])) <= 1.e-14)

    def test_homogeneity(self):
        c = ellipse(2., 1.)
        u = c.tangent(tangentField(1, {(1, 0): (0., 0.2)}))
        path1 = expCurve(c, u, self.metric, K_b=4, steps=32, T=1.)
        u2 = CurveTangent(2.*u.field, c)
        path2 = expCurve(c, u2, self.metric, K_b=4, steps=32, T=0.5)
        self.assertTrue(N.max(N.abs(path1.states[-1] - path2.states[-1]))
                        <= 1.e-9)

    def test_options(self):
        c = circle(1.)
        u = CurveTangent(PeriodicField(N.zeros((9, 2))), c)
        self.assertRaises(ValueError, expCurve, c, u, self.metric, K_b=2,
                          steps=8)
        self.assertRaises(ValueError, expCurve, c, u, self.metric,
                          stepsize=0.1)
        self.assertRaises(DimensionError, GeodesicIntegrator(self.metric),
                          c, CurveTangent(PeriodicField(N.zeros((3, 3)))))

    def test_energy_gate(self):
        c = ellipse(2., 1.)
        u = c.tangent(tangentField(2, {(2, 0): (0.5, 0.)}))
        self.assertRaises(IntegratorAccuracyError, expCurve, c, u,
                          self.metric, K_b=3, steps=16,
                          energy_tolerance=1.e-13)

    def test_log_output(self):
        c = circle(1.)
        u = c.tangent(tangentField(1, {(1, 0): (0.1, 0.)}))
        stream = io.StringIO()
        expCurve(c, u, self.metric, K_b=2, steps=16,
                 actions=[LogOutput(stream, skip=8)])
        lines = stream.getvalue().split('\n')
        self.assertEqual([l for l in lines if l.startswith('Step')],
                         ['Step 0', 'Step 8', 'Step 16'])
        self.assertTrue(lines[1].startswith('time: '))
        self.assertTrue(lines[2].startswith('energy: '))

    def test_rotation_equivariance(self):
        # rotation by a whole number of quadrature points is an exact
        # symmetry of the discretization
        F = curveExpMap(self.metric, K_b=3, steps=16, n_quadrature=40,
                        fd_step_metric=1.e-5)
        c = ellipse(2., 1.)
        u = tangentField(8, {(1, 1): (0.2, 0.), (2, 0): (0.05, 0.)})
        w = PeriodicField(N.concatenate([c.field.array, u.array], axis=1))
        residual = equivarianceResidual(F, w, rotation(2.*N.pi*5./40.), 2.)
        self.assertTrue(residual <= 1.e-8)

    def pairedEllipse(self, K):
        c = ellipse(2., 1., K)
        u = tangentField(K, {(1, 1): (0.3, 0.)})
        return PeriodicField(N.concatenate([c.field.array, u.array], axis=1))

    def test_reparametrization_equivariance(self):
        residuals = []
        for K, K_b in [(63, 16), (127, 32)]:
            F = curveExpMap(self.metric, K_b=K_b, steps=200)
            array = N.zeros((K+1, 1), N.complex128)
            array[1] = -0.05j
            phi = CircleDiffeo(PeriodicField(array))
            residuals.append(equivarianceResidual(F, self.pairedEllipse(K),
                                                  phi, 2.))
        self.assertTrue(residuals[0] <= 1.e-4)
        self.assertTrue(residuals[1] < residuals[0])

    def test_transport_order(self):
        F = curveExpMap(self.metric, K_b=16, steps=200)
        w = self.pairedEllipse(63)
        r1 = transportIdentityResidual(F, w, 1.e-3, 2.)
        r2 = transportIdentityResidual(F, w, 5.e-4, 2.)
        self.assertTrue(3. <= r1/r2 <= 5.)


class ShootingTest(unittest.TestCase):

    metric = MetricCoefficients(2, [1., 1., 1.])

    def test_dexp_at_zero(self):
        c = circle(1.)
        u = CurveTangent(PeriodicField(N.zeros((9, 2))), c)
        J = dexpJacobian(c, u, self.metric, K_b=3, steps=16)
        self.assertEqual(J.shape, (14, 14))
        self.assertTrue(N.max(N.abs(J - N.identity(14))) <= 1.e-4)

    def test_singular_jacobian(self):
        c = circle(1.)
        singular = N.identity(10)
        singular[-1, -1] = 0.
        self.assertRaises(PossiblyConjugateError, logCurve, c, c, self.metric,
                          jacobian=lambda v: singular, K_b=2, steps=16)
        self.assertRaises(PossiblyConjugateError, logCurve, c, c, self.metric,
                          jacobian=lambda v: N.zeros((10, 10)), K_b=2,
                          steps=16)

    def test_roundtrip(self):
        c0 = circle(1.)
        field = tangentField(3, {(1, 1): (0., 0.03), (2, 0): (0.05, 0.),
                                 (3, 1): (0.02, 0.01)})
        u = c0.tangent(field)
        path = expCurve(c0, u, self.metric, K_b=3, steps=16)
        c1 = Curve(path.stateField(-1))
        report = logCurve(c0, c1, self.metric, K_b=3, steps=16)
        self.assertTrue(report.converged)
        self.assertTrue(report.iterations <= 15)
        self.assertTrue(report.residual_norm <= 1.e-10)
        self.assertTrue(report.sigma_min > 0.3)
        x = field.realCoefficients(3)
        error = N.max(N.abs(report.u.field.realCoefficients(3) - x))
        self.assertTrue(error <= 1.e-6*N.max(N.abs(x)))

    def randomTangent(self, rng, norm, K=4):
        array = N.zeros((K+1, 2), N.complex128)
        array[0] = rng.standard_normal(2)
        array[1:] = rng.standard_normal((K, 2)) \
                    + 1j*rng.standard_normal((K, 2))
        field = PeriodicField(array)
        return (norm/sobolevNorm(field, 2.))*field

    def test_random_roundtrips(self):
        rng = N.random.default_rng(11)
        c0 = circle(1.)
        for i in range(10):
            field = self.randomTangent(rng, 0.15)
            path = expCurve(c0, c0.tangent(field), self.metric, K_b=4,
                            steps=32)
            report = logCurve(c0, Curve(path.stateField(-1)), self.metric,
                              K_b=4, steps=32)
            self.assertTrue(report.converged)
            self.assertTrue(report.iterations <= 15)
            self.assertTrue(0.8 <= report.sigma_min <= 1.2)
            x = field.realCoefficients(4)
            error = N.max(N.abs(report.u.field.realCoefficients(4) - x))
            self.assertTrue(error <= 1.e-6*N.max(N.abs(x)))

    def test_dexp_small_velocity(self):
        rng = N.random.default_rng(5)
        c0 = circle(1.)
        u = c0.tangent(self.randomTangent(rng, 0.05))
        J = dexpJacobian(c0, u, self.metric, K_b=4, steps=32)
        sigma = N.linalg.svd(J, compute_uv=False)
        self.assertTrue(0.9 <= sigma.min() and sigma.max() <= 1.1)
        # twice the steps and quadrature points
        fine = dexpJacobian(c0, u, self.metric, K_b=4, steps=64,
                            n_quadrature=80)
        self.assertTrue(N.max(N.abs(fine - J)) <= 1.e-4)

    def roundtripCurves(self):
        c0 = circle(1.)
        field = tangentField(3, {(1, 1): (0., 0.03), (2, 0): (0.05, 0.),
                                 (3, 1): (0.02, 0.01)})
        path = expCurve(c0, c0.tangent(field), self.metric, K_b=3, steps=16)
        return c0, Curve(path.stateField(-1))

    def test_multiscale(self):
        c0, c1 = self.roundtripCurves()
        direct = logCurve(c0, c1, self.metric, K_b=3, steps=16)
        report = logCurve(c0, c1, self.metric, init='multiscale', K_b=3,
                          steps=16)
        self.assertTrue(report.converged)
        error = N.max(N.abs(report.u.field.array - direct.u.field.array))
        self.assertTrue(error <= 1.e-8)

    def test_rotation_equivariance(self):
        # 36 quadrature points; a quarter turn maps the grid onto itself
        c0, c1 = self.roundtripCurves()
        rho = rotation(0.5*N.pi)
        report = logCurve(c0, c1, self.metric, K_b=3, steps=16)
        rotated = logCurve(reparametrize(c0, rho), reparametrize(c1, rho),
                           self.metric, K_b=3, steps=16)
        self.assertTrue(rotated.converged)
        expected = composeField(report.u.field, rho)
        error = N.max(N.abs(rotated.u.field.array - expected.array))
        self.assertTrue(error <= 1.e-8)

    def test_translation(self):
        # the straight line c0 + t v is not a geodesic, but close to one
        c0 = circle(1.)
        array = c0.field.array.copy()
        array[0, 0] += 0.05
        c1 = Curve(PeriodicField(array))
        report = logCurve(c0, c1, self.metric, K_b=3, steps=16)
        self.assertTrue(report.converged)
        path = expCurve(c0, report.u, self.metric, K_b=3, steps=16)
        self.assertTrue(N.max(N.abs(path.states[-1]
                                    - c1.field.realCoefficients(3)))
                        <= 1.e-9)
        v = N.zeros(14)
        v[0] = 0.05
        error = N.max(N.abs(report.u.field.realCoefficients(3) - v))
        self.assertTrue(0. < error <= 0.01)

    def test_iteration_limit(self):
        c0 = circle(1.)
        u = c0.tangent(tangentField(2, {(2, 0): (0.05, 0.)}))
        c1 = Curve(expCurve(c0, u, self.metric, K_b=2,
                            steps=16).stateField(-1))
        report = logCurve(c0, c1, self.metric, max_iter=0, K_b=2, steps=16)
        self.assertFalse(report.converged)
        self.assertEqual(report.iterations, 0)

    def test_invalid(self):
        c = circle(1.)
        self.assertRaises(ValueError, logCurve, c, c, self.metric,
                          init='random', K_b=2, steps=16)
        self.assertRaises(ValueError, logCurve, c, c, self.metric,
                          stepsize=1.)


def suite():
    loader = unittest.TestLoader()
    s = unittest.TestSuite()
    s.addTest(loader.loadTestsFromTestCase(HamiltonianTest))
    s.addTest(loader.loadTestsFromTestCase(ExpTest))
    s.addTest(loader.loadTestsFromTestCase(ShootingTest))
    return s


if __name__ == '__main__':
    unittest.main()
