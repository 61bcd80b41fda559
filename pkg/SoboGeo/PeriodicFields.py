# Band-limited periodic functions and Sobolev norms on the circle.
#

"""
Band-limited periodic fields

A :class:`PeriodicField` is a real-valued function on the circle
S^1 = R/2piZ with values in R^d, stored by its complex Fourier
coefficients u_k for k = 0..K. The coefficients for negative k are
implied by Hermitian symmetry, u_{-k} = conj(u_k), so every field
is real-valued by construction.

All Sobolev quantities use the periodic weight (1+k^2)^q and the
Parseval normalization in which q=0 is the plain integral of
<u, v> over [0, 2pi).
"""

__docformat__ = 'restructuredtext'

from SoboGeo.Utility import GridError, DimensionError, BandError, \
                            InvalidSymbolError, grid
import numpy as N


class PeriodicField(object):

    """
    Real R^d-valued function on the circle with band limit K

    Fields are immutable values. Arithmetic between fields of different
    band limits is carried out at the larger band limit.
    """

    def __init__(self, coefficients):
        """
        :param coefficients: complex Fourier coefficients for k = 0..K,
                             an array of shape (K+1, d), or of shape
                             (K+1,) for a scalar field
        :type coefficients: numpy.ndarray
        """
        array = N.array(coefficients, N.complex128)
        if array.ndim == 1:
            array = array[:, N.newaxis]
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise DimensionError('coefficient array must have shape (K+1, d)')
        array[0] = array[0].real
        array.setflags(write=False)
        self.array = array
        self.K = array.shape[0]-1
        self.d = array.shape[1]

    def __repr__(self):
        return 'PeriodicField(d=%d, K=%d)' % (self.d, self.K)

    def __getitem__(self, item):
        return PeriodicField(self.array[:, item])

    def _matched(self, other):
        if other.d != self.d:
            raise DimensionError('fields of dimension %d and %d'
                                 % (self.d, other.d))
        K = max(self.K, other.K)
        return self.withBand(K).array, other.withBand(K).array

    def __add__(self, other):
        a, b = self._matched(other)
        return PeriodicField(a+b)

    def __sub__(self, other):
        a, b = self._matched(other)
        return PeriodicField(a-b)

    def __mul__(self, factor):
        return PeriodicField(factor*self.array)

    __rmul__ = __mul__

    def __neg__(self):
        return PeriodicField(-self.array)

    def zero(self):
        """
        :returns: the zero field with the same dimension and band limit
        :rtype: :class:`PeriodicField`
        """
        return PeriodicField(N.zeros(self.array.shape, N.complex128))

    def withBand(self, K):
        """
        :param K: the new band limit
        :type K: int
        :returns: the field truncated or zero-padded to band limit K
        :rtype: :class:`PeriodicField`
        """
        if K == self.K:
            return self
        array = N.zeros((K+1, self.d), N.complex128)
        n = min(K, self.K)+1
        array[:n] = self.array[:n]
        return PeriodicField(array)

    def gridValues(self, n=None):
        """
        Evaluate the field on the equispaced grid theta_j = 2 pi j/n
        by an inverse FFT.

        :param n: the number of grid points (default: 2K+2)
        :type n: int
        :returns: the values, an array of shape (n, d)
        :rtype: numpy.ndarray
        """
        if n is None:
            n = 2*self.K+2
        if self.K >= (n+1)//2:
            raise BandError('a grid of %d points cannot resolve band %d'
                            % (n, self.K))
        spectrum = N.zeros((n//2+1, self.d), N.complex128)
        spectrum[:self.K+1] = n*self.array
        return N.fft.irfft(spectrum, n, axis=0)

    def realCoefficients(self, K_b=None):
        """
        :param K_b: the band of the real basis (default: K)
        :type K_b: int
        :returns: the coefficients in the real Fourier basis
                  {1, cos k theta, sin k theta : 1 <= k <= K_b}, ordered
                  component-major, a vector of length d(2K_b+1)
        :rtype: numpy.ndarray
        """
        if K_b is None:
            K_b = self.K
        a = self.withBand(K_b).array
        x = N.zeros((self.d, 2*K_b+1))
        x[:, 0] = a[0].real
        x[:, 1::2] = 2.*a[1:].real.T
        x[:, 2::2] = -2.*a[1:].imag.T
        return x.ravel()

    def maxAmplitude(self):
        return N.sqrt(N.sum(abs(self.array)**2, axis=1)).max()


def fromRealCoefficients(x, d):
    """
    Inverse of :meth:`PeriodicField.realCoefficients`

    :param x: real basis coefficients, component-major
    :type x: numpy.ndarray
    :param d: the codomain dimension
    :type d: int
    :rtype: :class:`PeriodicField`
    """
    x = N.asarray(x, N.float64).reshape((d, -1))
    if x.shape[1] % 2 != 1:
        raise DimensionError('real coefficient vector of invalid length')
    K = x.shape[1]//2
    array = N.zeros((K+1, d), N.complex128)
    array[0] = x[:, 0]
    array[1:] = 0.5*(x[:, 1::2] - 1j*x[:, 2::2]).T
    return PeriodicField(array)


def fromFunction(function, n):
    """
    :param function: a function mapping an array of angles to an array
                     of values of shape (n,) or (n, d)
    :param n: the number of grid points (even)
    :type n: int
    :returns: the field analyzed from the samples of function on the grid
    :rtype: :class:`PeriodicField`
    """
    return analyze(function(grid(n)))


#
# Fourier analysis and synthesis
#
def analyze(samples):
    """
    :param samples: values at theta_j = 2 pi j/N, shape (N,) or (N, d)
    :type samples: numpy.ndarray
    :returns: the field with band limit K = N/2-1. The Nyquist mode
              is dropped.
    :rtype: :class:`PeriodicField`
    :raises GridError: if N is odd or smaller than 2
    """
    samples = N.asarray(samples, N.float64)
    if samples.ndim == 1:
        samples = samples[:, N.newaxis]
    n = samples.shape[0]
    if n < 2 or n % 2 != 0:
        raise GridError('analysis requires an even number >= 2 of samples,'
                        ' got %d' % n)
    spectrum = N.fft.rfft(samples, axis=0)/n
    return PeriodicField(spectrum[:n//2])


def synthesize(u, points):
    """
    Evaluate a field at arbitrary points by direct summation of its
    Fourier series, which is exact for band-limited fields.

    :param u: the field
    :type u: :class:`PeriodicField`
    :param points: the angles at which u is evaluated
    :type points: sequence of float
    :returns: the values, an array of shape (len(points), d)
    :rtype: numpy.ndarray
    """
    points = N.asarray(points, N.float64).ravel()
    k = N.arange(u.K+1)
    weights = N.where(k == 0, 1., 2.)
    phases = N.exp(1j*N.outer(points, k))
    return N.dot(phases, weights[:, N.newaxis]*u.array).real


def derivative(u, order=1):
    """
    :param u: the field
    :type u: :class:`PeriodicField`
    :param order: the order of differentiation
    :type order: int
    :returns: the derivative of the given order with respect to theta
    :rtype: :class:`PeriodicField`
    """
    if order == 0:
        return u
    k = N.arange(u.K+1)
    return PeriodicField(((1j*k)**order)[:, N.newaxis]*u.array)


def applyPointwise(function, fields, padding=2, K=None):
    """
    Apply a pointwise nonlinearity to fields on a padded grid and
    analyze the result.

    :param function: maps the list of grid value arrays, each of
                     shape (n, d_i), to an array of shape (n, d_out)
    :param fields: the arguments
    :type fields: list of :class:`PeriodicField`
    :param padding: grid refinement factor relative to 2K+2
    :type padding: int
    :param K: the band limit of the result (default: the largest
              band limit of the arguments)
    :type K: int
    :rtype: :class:`PeriodicField`
    """
    K_in = max([f.K for f in fields])
    if K is None:
        K = K_in
    n = padding*(2*max(K_in, K)+2)
    values = function(*[f.gridValues(n) for f in fields])
    return analyze(values).withBand(K)


#
# Sobolev inner products
#
def _modeWeights(K):
    k = N.arange(K+1)
    return N.where(k == 0, 1., 2.)

def sobolevInner(u, v, q):
    """
    Periodic Sobolev inner product
    2 pi sum_k (1+k^2)^q <u_k, conj(v_k)>, summed over k = -K..K.

    :param u: first field
    :type u: :class:`PeriodicField`
    :param v: second field
    :type v: :class:`PeriodicField`
    :param q: the Sobolev index
    :type q: float
    :rtype: float
    :raises DimensionError: if the dimensions differ
    """
    q = float(q)
    if not N.isfinite(q):
        raise ValueError('Sobolev index must be finite')
    a, b = u._matched(v)
    k = N.arange(a.shape[0])
    weights = _modeWeights(a.shape[0]-1)*(1.+k**2)**q
    pairing = N.sum((a*N.conj(b)).real, axis=1)
    return 2.*N.pi*N.sum(weights*pairing)

def sobolevNorm(u, q):
    """
    :returns: the H^q norm of u
    :rtype: float
    """
    return N.sqrt(max(sobolevInner(u, u, q), 0.))

def normLadder(u, q_max, dq=0.5):
    """
    :returns: the list of pairs (q, ||u||_{H^q}) for q = 0, dq, ..., q_max
    :rtype: list
    """
    n = int(N.floor(q_max/dq + 1.e-9))
    return [(i*dq, sobolevNorm(u, i*dq)) for i in range(n+1)]


#
# Fourier multipliers
#
class MultiplierSymbol(object):

    """
    Even, positive Fourier multiplier symbol a(k)

    This is an abstract base class. Use one of its subclasses.
    """

    kind = None

    def __call__(self, k):
        raise NotImplementedError

    def parameters(self):
        raise NotImplementedError

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__,
                           ', '.join(['%s=%r' % item
                                      for item in self.parameters().items()]))

    def __eq__(self, other):
        return self.__class__ is other.__class__ and \
               self.parameters() == other.parameters()

    def __hash__(self):
        return hash((self.kind, repr(self.parameters())))


class BesselPowerSymbol(MultiplierSymbol):

    """
    a(k) = (1+k^2)^q, the weight of the H^q inner product
    """

    kind = 'bessel_power'

    def __init__(self, q):
        self.q = float(q)

    def __call__(self, k):
        return (1.+N.asarray(k, N.float64)**2)**self.q

    def parameters(self):
        return {'q': self.q}


class InertiaSumSymbol(MultiplierSymbol):

    """
    a(k) = 1+k^(2n), the symbol of Id + Delta^n
    """

    kind = 'inertia_sum'

    def __init__(self, n):
        self.n = int(n)

    def __call__(self, k):
        return 1.+N.asarray(k, N.float64)**(2*self.n)

    def parameters(self):
        return {'n': self.n}


class InertiaPowerSymbol(MultiplierSymbol):

    """
    a(k) = (1+k^2)^n, the symbol of (Id + Delta)^n
    """

    kind = 'inertia_power'

    def __init__(self, n):
        self.n = int(n)

    def __call__(self, k):
        return (1.+N.asarray(k, N.float64)**2)**self.n

    def parameters(self):
        return {'n': self.n}


class CustomSymbol(MultiplierSymbol):

    """
    Symbol given by a table of positive values for k = 0..K
    """

    kind = 'custom'

    def __init__(self, table):
        """
        :param table: the values a(0), ..., a(K)
        :type table: sequence of float
        :raises InvalidSymbolError: if an entry is not positive
        """
        table = N.array(table, N.float64).ravel()
        if len(table) == 0 or not N.all(N.isfinite(table)) \
           or N.any(table <= 0.):
            raise InvalidSymbolError('custom symbol entries must be positive')
        self.table = table

    def __call__(self, k):
        k = abs(N.asarray(k, N.int64))
        if N.any(k >= len(self.table)):
            raise BandError('custom symbol defined only up to k = %d'
                            % (len(self.table)-1))
        return self.table[k]

    def parameters(self):
        return {'table': list(self.table)}


_symbol_classes = dict((cls.kind, cls) for cls in
                       [BesselPowerSymbol, InertiaSumSymbol,
                        InertiaPowerSymbol, CustomSymbol])

def symbolFromSpec(spec):
    """
    :param spec: a dictionary with key "kind" and the parameters of the
                 symbol, e.g. {"kind": "inertia_power", "n": 1}
    :type spec: dict
    :rtype: :class:`MultiplierSymbol`
    """
    try:
        cls = _symbol_classes[spec['kind']]
    except KeyError:
        raise InvalidSymbolError('unknown multiplier symbol %r'
                                 % spec.get('kind'))
    parameters = dict((key, value) for key, value in spec.items()
                      if key != 'kind')
    try:
        return cls(**parameters)
    except TypeError as error:
        raise InvalidSymbolError(str(error))

def symbolSpec(symbol):
    spec = {'kind': symbol.kind}
    spec.update(symbol.parameters())
    return spec


def applyMultiplier(u, a, inverse=False):
    """
    :param u: the field
    :type u: :class:`PeriodicField`
    :param a: the multiplier symbol
    :type a: :class:`MultiplierSymbol`
    :param inverse: if True, apply the inverse multiplier
    :type inverse: bool
    :returns: the field with coefficients a(k)^(+-1) u_k
    :rtype: :class:`PeriodicField`
    """
    values = a(N.arange(u.K+1))
    if inverse:
        values = 1./values
    return PeriodicField(values[:, N.newaxis]*u.array)


#
# Empirical regularity
#
def decayExponent(u, k_min, relative_floor=1.e-13):
    """
    Estimate s in |u_k| ~ C k^(-s) by a least-squares fit of the
    logarithms of the bin-maximum amplitudes over the dyadic bins
    [k_min, 2k_min), [2k_min, 4k_min), ... up to K.

    Bins whose maximum lies below the noise floor (1e-300, or
    relative_floor times the largest amplitude of u) carry no
    information. With fewer than two populated bins the field is
    spectrally resolved and the result is +inf.

    :param u: the field
    :type u: :class:`PeriodicField`
    :param k_min: the first mode of the fit; K >= 2 k_min >= 8 is required
    :type k_min: int
    :param relative_floor: noise floor relative to the largest amplitude
    :type relative_floor: float
    :rtype: float
    """
    if k_min < 4 or u.K < 2*k_min:
        raise BandError('decay exponent needs K >= 2 k_min >= 8, got K=%d,'
                        ' k_min=%d' % (u.K, k_min))
    amplitude = N.sqrt(N.sum(abs(u.array)**2, axis=1))
    floor = max(1.e-300, relative_floor*amplitude.max())
    k_fit = []
    a_fit = []
    first = k_min
    while first <= u.K:
        last = min(2*first, u.K+1)
        segment = amplitude[first:last]
        i = N.argmax(segment)
        if segment[i] > floor:
            k_fit.append(first+i)
            a_fit.append(segment[i])
        first = 2*first
    if len(k_fit) < 2:
        return N.inf
    slope = N.polyfit(N.log(k_fit), N.log(a_fit), 1)[0]
    return -slope
