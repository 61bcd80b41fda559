# Immersed closed curves and constant-coefficient Sobolev metrics.
#

"""
The space of immersed closed curves and its Sobolev metrics

A :class:`Curve` is a band-limited map c: S^1 -> R^d (d >= 2) with
nowhere vanishing derivative. Tangent vectors h, k at c are fields of the
same dimension and band limit. The metric is

  G_c(h, k) = int sum_j a_j <D_s^j h, D_s^j k> ds

with the arc-length derivative D_s = |c'|^(-1) d/dtheta, ds = |c'| dtheta
and constant coefficients a_0, ..., a_n (a_0, a_n > 0). Integrals are
evaluated by the trapezoidal rule on an equispaced grid twice as fine as
the sampling grid of the curve, and arc-length derivatives are taken
spectrally on that grid.
"""

__docformat__ = 'restructuredtext'

from SoboGeo import PeriodicFields
from SoboGeo.PeriodicFields import PeriodicField, derivative, fromFunction
from SoboGeo.Utility import DegenerateCurveError, DimensionError, \
                            BandError, grid
import numpy as N


class Curve(object):

    """
    Immersed closed curve in R^d

    Immersion is checked on a grid four times finer than the sampling
    grid of the curve.
    """

    def __init__(self, field):
        """
        :param field: the parametrization
        :type field: :class:`~SoboGeo.PeriodicFields.PeriodicField`, d >= 2
        :raises DegenerateCurveError: if c' vanishes on the check grid
        """
        if field.d < 2:
            raise DimensionError('curves need d >= 2, got d = %d' % field.d)
        self.field = field
        self.array = field.array
        self.d = field.d
        self.K = field.K
        margin = immersionMargin(field)
        if not margin > 0.:
            raise DegenerateCurveError('curve is not immersed (min |c\'| = %g)'
                                       % margin)

    def __repr__(self):
        return 'Curve(d=%d, K=%d)' % (self.d, self.K)

    def tangent(self, field):
        """
        :returns: field as a tangent vector at this curve
        :rtype: :class:`CurveTangent`
        """
        return CurveTangent(field, self)


class CurveTangent(object):

    """
    Tangent vector to the space of curves at a given base curve
    """

    def __init__(self, field, curve=None):
        """
        :param field: the vector field along the curve
        :type field: :class:`~SoboGeo.PeriodicFields.PeriodicField`
        :param curve: the base curve. If given, a field of smaller band
                      limit is zero-padded to the band limit of the curve.
        :type curve: :class:`Curve`
        """
        if curve is not None:
            if field.d != curve.d:
                raise DimensionError('tangent of dimension %d at a curve in'
                                     ' R^%d' % (field.d, curve.d))
            if field.K > curve.K:
                raise BandError('tangent band %d exceeds curve band %d'
                                % (field.K, curve.K))
            field = field.withBand(curve.K)
        self.field = field
        self.array = field.array
        self.d = field.d
        self.K = field.K

    def __repr__(self):
        return 'CurveTangent(d=%d, K=%d)' % (self.d, self.K)


class MetricCoefficients(object):

    """
    Order n and constant coefficients a_0, ..., a_n of the metric G
    """

    def __init__(self, n, a):
        """
        :param n: the order of the metric (>= 2)
        :type n: int
        :param a: the coefficients a_0, ..., a_n; all non-negative,
                  a_0 and a_n positive
        :type a: sequence of float
        """
        a = [float(x) for x in a]
        if int(n) != n or n < 2:
            raise ValueError('metric order must be an integer >= 2')
        if len(a) != n+1:
            raise ValueError('order %d needs %d coefficients, got %d'
                             % (n, n+1, len(a)))
        if min(a) < 0. or not a[0] > 0. or not a[-1] > 0.:
            raise ValueError('metric coefficients must be non-negative'
                             ' with a_0, a_n > 0')
        self.n = int(n)
        self.a = tuple(a)

    def __repr__(self):
        return 'MetricCoefficients(n=%d, a=%r)' % (self.n, list(self.a))

    def spec(self):
        return {'n': self.n, 'a': list(self.a)}


def metricFromSpec(spec):
    """
    :param spec: {"n": int, "a": [a_0, ..., a_n]}
    :type spec: dict
    :rtype: :class:`MetricCoefficients`
    """
    return MetricCoefficients(spec['n'], spec['a'])


#
# Spectral differentiation of grid values along the grid axis (-2)
#
def gridDerivative(values):
    n = values.shape[-2]
    spectrum = N.fft.rfft(values, axis=-2)
    k = N.arange(spectrum.shape[-2], dtype=N.float64)
    if n % 2 == 0:
        k[-1] = 0.
    spectrum = spectrum*(1j*k)[:, N.newaxis]
    return N.fft.irfft(spectrum, n, axis=-2)

def _speedValues(field, n):
    return N.sqrt(N.sum(derivative(field).gridValues(n)**2, axis=-1))

def immersionMargin(field):
    """
    :returns: the minimum of |c'| on a grid four times finer than the
              sampling grid of the curve
    :rtype: float
    """
    return _speedValues(field, 4*(2*field.K+2)).min()

def _quadratureSize(c):
    return 2*(2*c.K+2)

def quadratureSize(K_b, K=0):
    """
    :returns: the number of quadrature points used for geodesics at
              state band K_b starting from a curve of band K
    :rtype: int
    """
    return max(2*(2*K+2), 4*(2*K_b+2))


#
# Arc-length calculus
#
def speed(c):
    """
    :param c: the curve
    :type c: :class:`Curve`
    :returns: |c'|, computed on a grid padded by a factor 2 and
              truncated to the band limit of c
    :rtype: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    """
    return PeriodicFields.applyPointwise(
        lambda dc: N.sqrt(N.sum(dc**2, axis=1)),
        [derivative(c.field)], padding=2, K=c.K)

def length(c):
    """
    :returns: the length of the curve
    :rtype: float
    """
    n = 4*(2*c.K+2)
    return 2.*N.pi*N.mean(_speedValues(c.field, n))

def arcDerivative(c, h, j=1):
    """
    :param c: the base curve
    :type c: :class:`Curve`
    :param h: the tangent vector
    :type h: :class:`CurveTangent`
    :param j: the number of arc-length derivatives
    :type j: int
    :returns: D_s^j h; each application differentiates and divides
              by the speed on a grid padded by a factor 2
    :rtype: :class:`CurveTangent`
    """
    if j < 0:
        raise ValueError('number of derivatives must be non-negative')
    field = h.field
    dc = derivative(c.field)
    for i in range(j):
        field = PeriodicFields.applyPointwise(
            lambda dh, dc: dh/N.sqrt(N.sum(dc**2, axis=1))[:, N.newaxis],
            [derivative(field), dc], padding=2, K=h.K)
    return CurveTangent(field)

def _arcDerivativeValues(values, speed, order):
    # values: (..., n, d) grid values of a field, speed: (..., n)
    result = [values]
    for j in range(order):
        values = gridDerivative(values)/speed[..., N.newaxis]
        result.append(values)
    return result

def metricEval(c, h, k, m):
    """
    :param c: the base curve
    :type c: :class:`Curve`
    :param h: the first tangent vector
    :type h: :class:`CurveTangent`
    :param k: the second tangent vector
    :type k: :class:`CurveTangent`
    :param m: the metric coefficients
    :type m: :class:`MetricCoefficients`
    :returns: G_c(h, k)
    :rtype: float
    """
    if h.d != c.d or k.d != c.d:
        raise DimensionError('tangent vectors must have the dimension of'
                             ' the curve')
    n = max(_quadratureSize(c), 2*h.K+2, 2*k.K+2)
    s = _speedValues(c.field, n)
    dh = _arcDerivativeValues(h.field.gridValues(n), s, m.n)
    dk = _arcDerivativeValues(k.field.gridValues(n), s, m.n)
    integrand = N.zeros(n)
    for a, gh, gk in zip(m.a, dh, dk):
        integrand = integrand + a*N.sum(gh*gk, axis=-1)
    return 2.*N.pi*N.mean(integrand*s)

def metricMatrix(c, m, K_b):
    """
    :param c: the base curve
    :type c: :class:`Curve`
    :param m: the metric coefficients
    :type m: :class:`MetricCoefficients`
    :param K_b: the band of the real Fourier basis
    :type K_b: int
    :returns: the Gram matrix of G_c in the real Fourier basis
              {e_a, cos(k theta) e_a, sin(k theta) e_a}, component-major,
              of size d(2K_b+1), and its condition number
    :rtype: tuple (numpy.ndarray, float)
    :raises BandError: if K_b exceeds the band limit of c
    """
    if K_b > c.K:
        raise BandError('basis band %d exceeds curve band %d' % (K_b, c.K))
    discretization = CurveDiscretization(K_b, c.d, _quadratureSize(c))
    s = _speedValues(c.field, discretization.n)
    G = N.kron(N.identity(c.d), discretization.gramMatrix(s, m))
    return G, N.linalg.cond(G)


class CurveDiscretization(object):

    """
    Real Fourier basis of band K_b for curves in R^d with a fixed
    quadrature grid

    Curves and tangent vectors are coefficient vectors of length
    D = d(2K_b+1) in the ordering of
    :meth:`~SoboGeo.PeriodicFields.PeriodicField.realCoefficients`.
    Since D_s acts componentwise, the Gram matrix of G is
    I_d (x) G_scalar.
    """

    def __init__(self, K_b, d, n=None):
        """
        :param K_b: the band of the basis
        :type K_b: int
        :param d: the codomain dimension
        :type d: int
        :param n: the number of quadrature points
                  (default: max(64, 4(2K_b+2)))
        :type n: int
        """
        if n is None:
            n = max(64, 4*(2*K_b+2))
        if n < 2*K_b+2:
            raise BandError('%d quadrature points cannot resolve band %d'
                            % (n, K_b))
        self.K_b = K_b
        self.d = d
        self.n = n
        self.nb = 2*K_b+1
        self.dimension = d*self.nb
        self.basis, self.basis_derivative = self._basisValues(n)
        n_check = 4*(2*K_b+2)
        self.check_derivative = self._basisValues(n_check)[1]

    def _basisValues(self, n):
        theta = grid(n)
        k = N.arange(1, self.K_b+1)
        values = N.zeros((n, self.nb))
        derivatives = N.zeros((n, self.nb))
        values[:, 0] = 1.
        values[:, 1::2] = N.cos(N.outer(theta, k))
        values[:, 2::2] = N.sin(N.outer(theta, k))
        derivatives[:, 1::2] = -k*N.sin(N.outer(theta, k))
        derivatives[:, 2::2] = k*N.cos(N.outer(theta, k))
        return values, derivatives

    def blocks(self, x):
        """
        :returns: x as an array of shape (2K_b+1, d)
        """
        return N.reshape(x, (self.d, self.nb)).T

    def field(self, x):
        """
        :rtype: :class:`~SoboGeo.PeriodicFields.PeriodicField`
        """
        return PeriodicFields.fromRealCoefficients(x, self.d)

    def speedValues(self, x):
        dc = N.dot(self.basis_derivative, self.blocks(x))
        return N.sqrt(N.sum(dc**2, axis=-1))

    def immersionMargin(self, x):
        """
        :returns: the minimum speed on a grid of 4(2K_b+2) points
        """
        dc = N.dot(self.check_derivative, self.blocks(x))
        return N.sqrt(N.sum(dc**2, axis=-1)).min()

    def scalarMetricMatrix(self, x, m):
        """
        :returns: G_scalar, of size 2K_b+1
        """
        return self.gramMatrix(self.speedValues(x), m)

    def gramMatrix(self, s, m):
        """
        :param s: the speed of the base curve on the quadrature grid
        :type s: numpy.ndarray
        """
        weights = (2.*N.pi/self.n)*s
        G = N.zeros((self.nb, self.nb))
        for a, values in zip(m.a, _arcDerivativeValues(self.basis, s, m.n)):
            if a != 0.:
                G = G + a*N.dot(values.T, weights[:, N.newaxis]*values)
        return 0.5*(G+G.T)

    def metricMatrix(self, x, m):
        """
        :returns: the full Gram matrix of size d(2K_b+1)
        """
        return N.kron(N.identity(self.d), self.scalarMetricMatrix(x, m))

    def batchEnergy(self, dc, v, m):
        """
        Evaluate G_c(v, v) for a batch of curves given by their
        derivative values.

        :param dc: c' on the quadrature grid, shape (B, n, d)
        :type dc: numpy.ndarray
        :param v: the tangent vector, a coefficient vector
        :type v: numpy.ndarray
        :returns: the energies, shape (B,)
        :rtype: numpy.ndarray
        """
        vb = self.blocks(v)
        s = N.sqrt(N.sum(dc**2, axis=-1))
        values = N.dot(self.basis, vb)
        integrand = m.a[0]*N.sum(values**2, axis=-1)*N.ones_like(s)
        g = N.dot(self.basis_derivative, vb)/s[..., N.newaxis]
        for j in range(1, m.n+1):
            if m.a[j] != 0.:
                integrand = integrand + m.a[j]*N.sum(g**2, axis=-1)
            if j < m.n:
                g = gridDerivative(g)/s[..., N.newaxis]
        return (2.*N.pi/self.n)*N.sum(integrand*s, axis=-1)


#
# Reparametrization and test curves
#
def reparametrize(c, phi):
    """
    :returns: the curve c o phi
    :rtype: :class:`Curve`
    """
    from SoboGeo.CircleGroup import composeField
    return Curve(composeField(c.field, phi))

def circle(R=1., K=8, center=(0., 0.)):
    """
    :returns: the circle of radius R, parametrized with constant speed R
    :rtype: :class:`Curve`
    """
    x0, y0 = center
    return Curve(fromFunction(lambda t: N.transpose([x0+R*N.cos(t),
                                                     y0+R*N.sin(t)]),
                              2*K+2))

def ellipse(a=2., b=1., K=8):
    """
    :returns: the ellipse theta -> (a cos theta, b sin theta)
    :rtype: :class:`Curve`
    """
    return Curve(fromFunction(lambda t: N.transpose([a*N.cos(t),
                                                     b*N.sin(t)]),
                              2*K+2))

def bumpyCircle(amplitude=0.1, frequency=5, R=1., K=16):
    """
    :returns: the curve r(theta) = R(1 + amplitude cos(frequency theta))
              in polar form
    :rtype: :class:`Curve`
    """
    def samples(t):
        r = R*(1.+amplitude*N.cos(frequency*t))
        return N.transpose([r*N.cos(t), r*N.sin(t)])
    return Curve(fromFunction(samples, 2*K+2))
