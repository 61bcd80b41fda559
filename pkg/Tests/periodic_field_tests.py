# Periodic field and Sobolev norm tests
#

import unittest
import numpy as N
from SoboGeo import PeriodicFields
from SoboGeo.PeriodicFields import PeriodicField, analyze, synthesize, \
                                   derivative, sobolevInner, sobolevNorm, \
                                   normLadder, applyMultiplier, decayExponent, \
                                   symbolFromSpec, fromRealCoefficients
from SoboGeo.Utility import GridError, DimensionError, BandError, \
                            InvalidSymbolError, grid


def cosineMode(k, K, amplitude=1.):
    array = N.zeros((K+1, 1), N.complex128)
    array[k] = 0.5*amplitude
    return PeriodicField(array)

def randomField(rng, K, d=1, decay=2.):
    k = N.arange(K+1, dtype=N.float64)
    weights = (1.+k)**(-decay)
    array = weights[:, N.newaxis] * (rng.standard_normal((K+1, d))
                                     + 1j*rng.standard_normal((K+1, d)))
    return PeriodicField(array)


class FourierTest(unittest.TestCase):

    def test_analysis(self):
        u = analyze(N.cos(grid(8)))
        self.assertEqual(u.K, 3)
        self.assertEqual(u.d, 1)
        self.assertAlmostEqual(u.array[1, 0].real, 0.5, 14)
        self.assertAlmostEqual(abs(u.array[2, 0]), 0., 14)
        value = synthesize(u, [N.pi/3.])[0, 0]
        self.assertAlmostEqual(value, 0.5, 14)

    def test_grid_values(self):
        u = PeriodicFields.fromFunction(
            lambda t: N.transpose([N.sin(2*t), 1.+N.cos(t)]), 16)
        self.assertEqual(u.d, 2)
        theta = grid(32)
        values = u.gridValues(32)
        self.assertTrue(N.allclose(values[:, 0], N.sin(2*theta),
                                   atol=1.e-13))
        self.assertTrue(N.allclose(values[:, 1], 1.+N.cos(theta),
                                   atol=1.e-13))
        self.assertRaises(BandError, u.gridValues, 14)

    def test_odd_grid(self):
        self.assertRaises(GridError, analyze, N.ones(7))
        self.assertRaises(GridError, analyze, N.ones(1))

    def test_derivative(self):
        u = PeriodicFields.fromFunction(lambda t: N.sin(3*t), 16)
        du = derivative(u)
        theta = grid(16)
        self.assertTrue(N.allclose(du.gridValues(16)[:, 0],
                                   3.*N.cos(3*theta), atol=1.e-12))
        d2u = derivative(u, 2)
        self.assertTrue(N.allclose(d2u.gridValues(16)[:, 0],
                                   -9.*N.sin(3*theta), atol=1.e-12))

    def test_finite_differences(self):
        u = PeriodicFields.fromFunction(lambda t: N.sin(3*t), 16)
        errors = []
        for n in [32, 64]:
            v = u.gridValues(n)[:, 0]
            h = 2.*N.pi/n
            fd = (8.*(N.roll(v, -1)-N.roll(v, 1))
                  - (N.roll(v, -2)-N.roll(v, 2)))/(12.*h)
            errors.append(N.max(N.abs(fd - derivative(u).gridValues(n)[:, 0])))
        self.assertTrue(errors[1] <= 1.e-3)
        self.assertTrue(14.5 <= errors[0]/errors[1] <= 16.5)

    def test_arithmetic(self):
        u = cosineMode(1, 2)
        v = cosineMode(3, 4)
        w = u + v
        self.assertEqual(w.K, 4)
        self.assertAlmostEqual(w.array[1, 0].real, 0.5, 15)
        self.assertAlmostEqual(w.array[3, 0].real, 0.5, 15)
        self.assertEqual((2.*u - u).K, 2)
        self.assertRaises(DimensionError, lambda: u + PeriodicField(
                                                   N.zeros((3, 2))))

    def test_real_coefficients(self):
        rng = N.random.default_rng(1)
        u = randomField(rng, 5, 2)
        x = u.realCoefficients()
        self.assertEqual(len(x), 2*11)
        v = fromRealCoefficients(x, 2)
        self.assertTrue(N.allclose(u.array, v.array, atol=1.e-15))
        values = u.gridValues(12)
        theta = grid(12)
        expected = x[11] + x[12]*N.cos(theta) + x[13]*N.sin(theta)
        for k in range(2, 6):
            expected = expected + x[11+2*k-1]*N.cos(k*theta) \
                                + x[11+2*k]*N.sin(k*theta)
        self.assertTrue(N.allclose(values[:, 1], expected, atol=1.e-13))


class SobolevNormTest(unittest.TestCase):

    def test_cosine_modes(self):
        for k in [1, 2, 3, 5]:
            u = cosineMode(k, 8)
            for q in [0., 0.5, 1., 2.]:
                self.assertAlmostEqual(sobolevInner(u, u, q)
                                       / (N.pi*(1.+k**2)**q), 1., 12)
        u = cosineMode(3, 4)
        self.assertAlmostEqual(sobolevInner(u, u, 2), 100.*N.pi, 10)

    def test_constant(self):
        u = PeriodicField(N.array([[1.5, -2.]]))
        for q in [0., 1., 3.]:
            self.assertAlmostEqual(sobolevInner(u, u, q),
                                   2.*N.pi*(1.5**2+2.**2), 12)

    def test_quadrature(self):
        rng = N.random.default_rng(2)
        u = randomField(rng, 6, 3)
        v = randomField(rng, 6, 3)
        n = 32
        direct = 2.*N.pi*N.mean(N.sum(u.gridValues(n)*v.gridValues(n),
                                      axis=1))
        self.assertAlmostEqual(sobolevInner(u, v, 0.), direct, 12)
        self.assertAlmostEqual(sobolevInner(u, v, 1.5),
                               sobolevInner(v, u, 1.5), 12)

    def test_norm_decomposition(self):
        rng = N.random.default_rng(3)
        for i in range(100):
            u = randomField(rng, 16, 1+i % 3)
            du = derivative(u)
            for q in [1., 1.6, 2., 3.]:
                lhs = sobolevNorm(u, q)**2
                rhs = sobolevNorm(u, q-1.)**2 + sobolevNorm(du, q-1.)**2
                self.assertTrue(abs(lhs-rhs) <= 1.e-12*lhs)

    def test_monotonicity(self):
        rng = N.random.default_rng(4)
        for i in range(10):
            u = randomField(rng, 12, 2)
            norms = [sobolevInner(u, u, q) for q in N.arange(0., 3.25, 0.25)]
            self.assertTrue(all(b >= a for a, b in zip(norms[:-1],
                                                       norms[1:])))

    def test_ladder(self):
        u = cosineMode(2, 4)
        ladder = normLadder(u, 1., 0.5)
        self.assertEqual([q for q, norm in ladder], [0., 0.5, 1.])
        for q, norm in ladder:
            self.assertAlmostEqual(norm, N.sqrt(N.pi*5.**q), 12)

    def test_invalid_index(self):
        u = cosineMode(1, 2)
        self.assertRaises(ValueError, sobolevInner, u, u, N.inf)
        self.assertRaises(DimensionError, sobolevInner, u,
                          PeriodicField(N.zeros((3, 2))), 1.)


class MultiplierTest(unittest.TestCase):

    def test_symbols(self):
        k = N.arange(5)
        a = symbolFromSpec({'kind': 'inertia_power', 'n': 1})
        self.assertTrue(N.allclose(a(k), 1.+k**2))
        a = symbolFromSpec({'kind': 'inertia_sum', 'n': 2})
        self.assertTrue(N.allclose(a(k), 1.+k**4))
        a = symbolFromSpec({'kind': 'bessel_power', 'q': 0.5})
        self.assertTrue(N.allclose(a(k), N.sqrt(1.+k**2)))
        a = symbolFromSpec({'kind': 'custom', 'table': [1., 2., 3.]})
        self.assertTrue(N.allclose(a(N.array([0, 2, -1])), [1., 3., 2.]))
        self.assertRaises(BandError, a, N.array([3]))

    def test_invalid_symbols(self):
        self.assertRaises(InvalidSymbolError, symbolFromSpec,
                          {'kind': 'gaussian'})
        self.assertRaises(InvalidSymbolError, symbolFromSpec,
                          {'kind': 'custom', 'table': [1., -1.]})
        self.assertRaises(InvalidSymbolError, symbolFromSpec,
                          {'kind': 'inertia_power', 'm': 1})

    def test_apply(self):
        rng = N.random.default_rng(4)
        u = randomField(rng, 8)
        a = symbolFromSpec({'kind': 'inertia_power', 'n': 2})
        v = applyMultiplier(u, a)
        w = applyMultiplier(v, a, inverse=True)
        self.assertTrue(N.allclose(u.array, w.array, atol=1.e-14))
        self.assertAlmostEqual(sobolevInner(v, u, 0.),
                               sobolevNorm(u, 2.)**2, 8)


class DecayExponentTest(unittest.TestCase):

    def test_power_law(self):
        K = 63
        k = N.arange(K+1, dtype=N.float64)
        array = N.zeros(K+1)
        array[1:] = k[1:]**(-3.)
        u = PeriodicField(array)
        s = decayExponent(u, 4)
        self.assertTrue(abs(s-3.) <= 0.15)

    def test_single_mode(self):
        u = cosineMode(1, 63)
        self.assertEqual(decayExponent(u, 4), N.inf)

    def test_band_too_small(self):
        u = cosineMode(1, 7)
        self.assertRaises(BandError, decayExponent, u, 4)
        self.assertRaises(BandError, decayExponent, cosineMode(1, 63), 2)


def suite():
    loader = unittest.TestLoader()
    s = unittest.TestSuite()
    s.addTest(loader.loadTestsFromTestCase(FourierTest))
    s.addTest(loader.loadTestsFromTestCase(SobolevNormTest))
    s.addTest(loader.loadTestsFromTestCase(MultiplierTest))
    s.addTest(loader.loadTestsFromTestCase(DecayExponentTest))
    return s


if __name__ == '__main__':
    unittest.main()
