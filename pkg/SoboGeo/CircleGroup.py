# The group of orientation-preserving diffeomorphisms of the circle.
#

"""
Diffeomorphisms of the circle and equivariance tests

A :class:`CircleDiffeo` represents phi(theta) = theta + f(theta) by its
periodic displacement f, a scalar :class:`~SoboGeo.PeriodicFields.PeriodicField`.
The group acts on fields by composition, u -> u o phi.

The module also provides the test harness for maps F that commute with
this action, F(u o phi) = F(u) o phi, and for the infinitesimal form of
that identity, DF(w).(w') = (F(w))'.
"""

__docformat__ = 'restructuredtext'

from SoboGeo import PeriodicFields
from SoboGeo.PeriodicFields import PeriodicField, analyze, synthesize, \
                                   derivative, sobolevNorm
from SoboGeo.Utility import InvalidDiffeoError, NearDegenerateDiffeoError, \
                            FlowDegenerateError, DimensionError, grid, \
                            relativeResidual
import numpy as N


class CircleDiffeo(object):

    """
    Orientation-preserving diffeomorphism theta -> theta + f(theta)

    The condition 1 + f'(theta) > 0 is checked at the points of a grid
    of 2K+2 (at least 16) points.
    """

    def __init__(self, displacement):
        """
        :param displacement: the displacement field f
        :type displacement: :class:`~SoboGeo.PeriodicFields.PeriodicField`
                            with d=1
        :raises InvalidDiffeoError: if 1 + f' is not positive on the grid
        """
        if not isinstance(displacement, PeriodicField):
            displacement = PeriodicField(displacement)
        if displacement.d != 1:
            raise DimensionError('a diffeomorphism needs a scalar displacement')
        self.displacement = displacement
        self.K = displacement.K
        self.array = displacement.array
        margin = self.monotonicityMargin()
        if not margin > 0.:
            raise InvalidDiffeoError('not orientation preserving at grid'
                                     ' resolution (min 1+f\' = %g)' % margin)

    def __repr__(self):
        return 'CircleDiffeo(K=%d)' % self.K

    def __call__(self, points):
        points = N.asarray(points, N.float64).ravel()
        return points + synthesize(self.displacement, points)[:, 0]

    def derivativeAt(self, points):
        """
        :returns: phi'(theta) = 1 + f'(theta) at the given points
        :rtype: numpy.ndarray
        """
        return 1. + synthesize(derivative(self.displacement),
                               points)[:, 0]

    def displacementValues(self, n=None):
        """
        :returns: f at the points of an equispaced grid of n points
        :rtype: numpy.ndarray
        """
        if n is None:
            n = self._checkGridSize()
        return self.displacement.gridValues(n)[:, 0]

    def monotonicityMargin(self, n=None):
        """
        :returns: the minimum of 1 + f' on an equispaced grid
        :rtype: float
        """
        if n is None:
            n = self._checkGridSize()
        return 1. + derivative(self.displacement).gridValues(n)[:, 0].min()

    def isIdentity(self):
        return not N.any(self.array)

    def _checkGridSize(self):
        return max(2*self.K+2, 16)


def identity(K=0):
    """
    :returns: the identity diffeomorphism with band limit K
    :rtype: :class:`CircleDiffeo`
    """
    return CircleDiffeo(PeriodicField(N.zeros((K+1, 1))))

def rotation(alpha, K=0):
    """
    :returns: the rotation theta -> theta + alpha with band limit K
    :rtype: :class:`CircleDiffeo`
    """
    array = N.zeros((K+1, 1))
    array[0, 0] = alpha
    return CircleDiffeo(PeriodicField(array))

def supDistance(phi, psi, n=None):
    """
    :returns: the maximum distance between phi and psi on a grid
    :rtype: float
    """
    if n is None:
        n = max(phi._checkGridSize(), psi._checkGridSize())
    difference = phi.displacement - psi.displacement
    return abs(difference.gridValues(n)).max()


#
# Group operations
#
def composeField(u, phi, padding=2):
    """
    Reparametrize a field by a diffeomorphism.

    u is evaluated exactly at phi(theta_j) on a grid padded by the
    given factor, then analyzed and truncated to the band limit of u.

    :param u: the field
    :type u: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :param phi: the diffeomorphism
    :type phi: :class:`CircleDiffeo`
    :returns: u o phi
    :rtype: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    """
    if phi.isIdentity():
        return u
    n = padding*(2*max(u.K, phi.K)+2)
    theta = grid(n)
    values = synthesize(u, theta + phi.displacementValues(n))
    return analyze(values).withBand(u.K)

def compose(phi, psi):
    """
    :param phi: the outer diffeomorphism
    :type phi: :class:`CircleDiffeo`
    :param psi: the inner diffeomorphism
    :type psi: :class:`CircleDiffeo`
    :returns: phi o psi, theta -> psi(theta) + f_phi(psi(theta))
    :rtype: :class:`CircleDiffeo`
    :raises InvalidDiffeoError: if the result is not monotone at grid
                                resolution
    """
    K = max(phi.K, psi.K)
    f_phi = phi.displacement.withBand(K)
    f_psi = psi.displacement.withBand(K)
    return CircleDiffeo(f_psi + composeField(f_phi, psi))

def invert(phi, tolerance=1.e-12, max_iterations=50):
    """
    Invert a diffeomorphism by solving theta + f(theta) = y with
    Newton's method at every point y of a padded grid.

    :param phi: the diffeomorphism
    :type phi: :class:`CircleDiffeo`
    :returns: phi^(-1), with the band limit of phi
    :rtype: :class:`CircleDiffeo`
    :raises NearDegenerateDiffeoError: if Newton's method does not
                                       converge
    """
    if phi.isIdentity():
        return phi
    n = 2*phi._checkGridSize()
    y = grid(n)
    f = phi.displacement
    df = derivative(f)
    theta = y - f.gridValues(n)[:, 0]
    for i in range(max_iterations):
        residual = theta + synthesize(f, theta)[:, 0] - y
        if abs(residual).max() <= tolerance:
            break
        theta = theta - residual/(1.+synthesize(df, theta)[:, 0])
    else:
        raise NearDegenerateDiffeoError('inversion did not converge in %d'
                                        ' Newton iterations' % max_iterations)
    return CircleDiffeo(analyze(theta-y).withBand(phi.K))


#
# Flows of vector fields
#
def integrateFlow(velocity, T, steps, K=None, padding=2):
    """
    Integrate d/dt psi = X_t o psi, psi_0 = Id with the classical
    fourth-order Runge-Kutta method at the points of a padded grid.
    The tangent map psi' is integrated along with psi and must stay
    positive.

    :param velocity: a function of time returning the scalar field X_t
    :param T: the final time
    :type T: float
    :param steps: the number of steps
    :type steps: int
    :param K: the band limit of the result (default: that of X_0)
    :type K: int
    :returns: psi_T
    :rtype: :class:`CircleDiffeo`
    :raises FlowDegenerateError: if psi' becomes non-positive
    """
    if steps < 1:
        raise ValueError('at least one step is required')
    if K is None:
        K = velocity(0.).K
    n = padding*max(2*K+2, 16)
    theta = grid(n)
    psi = theta.copy()
    dpsi = N.ones(n)
    h = float(T)/steps

    def rhs(t, psi, dpsi):
        X = velocity(t)
        return synthesize(X, psi)[:, 0], \
               synthesize(derivative(X), psi)[:, 0]*dpsi

    t = 0.
    for step in range(steps):
        k1, l1 = rhs(t, psi, dpsi)
        k2, l2 = rhs(t+0.5*h, psi+0.5*h*k1, dpsi+0.5*h*l1)
        k3, l3 = rhs(t+0.5*h, psi+0.5*h*k2, dpsi+0.5*h*l2)
        k4, l4 = rhs(t+h, psi+h*k3, dpsi+h*l3)
        psi = psi + (h/6.)*(k1+2.*k2+2.*k3+k4)
        dpsi = dpsi + (h/6.)*(l1+2.*l2+2.*l3+l4)
        t = (step+1)*h
        if not dpsi.min() > 0.:
            raise FlowDegenerateError('flow left the monotone regime at'
                                      ' t = %g' % t, t)
    return CircleDiffeo(analyze(psi-theta).withBand(K))

def flowOneParameter(X, t, steps):
    """
    :param X: a scalar vector field
    :type X: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :param t: the time
    :type t: float
    :param steps: the number of Runge-Kutta steps
    :type steps: int
    :returns: exp(t X), the time-t flow of X
    :rtype: :class:`CircleDiffeo`
    """
    if X.d != 1:
        raise DimensionError('the flow needs a scalar vector field')
    return integrateFlow(lambda s: X, t, steps, X.K)


#
# Equivariant maps
#
class EquivariantMap(object):

    """
    A deterministic map F between fields, F(u o phi) = F(u) o phi
    """

    def __init__(self, evaluator, d_in, d_out, name=None):
        """
        :param evaluator: the function F, mapping fields of dimension
                          d_in to fields of dimension d_out
        :param d_in: the input dimension
        :type d_in: int
        :param d_out: the output dimension
        :type d_out: int
        """
        self.evaluator = evaluator
        self.d_in = d_in
        self.d_out = d_out
        self.name = name

    def __repr__(self):
        return 'EquivariantMap(%s, %d -> %d)' % (self.name, self.d_in,
                                                 self.d_out)

    def __call__(self, u):
        if u.d != self.d_in:
            raise DimensionError('map expects dimension %d, got %d'
                                 % (self.d_in, u.d))
        result = self.evaluator(u)
        if result.d != self.d_out:
            raise DimensionError('map produced dimension %d instead of %d'
                                 % (result.d, self.d_out))
        return result

def pointwiseMap(function, d, name=None):
    """
    :param function: a function acting on arrays of values of shape (n, d)
    :param d: the dimension of input and output
    :type d: int
    :returns: the pointwise map u -> function(u), evaluated on a 3x
              padded grid and truncated to the band limit of u
    :rtype: :class:`EquivariantMap`
    """
    return EquivariantMap(lambda u: PeriodicFields.applyPointwise(
                                              function, [u], padding=3),
                          d, d, name)

def multiplierMap(symbol, d):
    """
    :returns: the linear map u -> A u for the Fourier multiplier A
    :rtype: :class:`EquivariantMap`
    """
    return EquivariantMap(lambda u: PeriodicFields.applyMultiplier(u, symbol),
                          d, d, repr(symbol))

def equivarianceResidual(F, u, phi, q):
    """
    :param F: the map
    :type F: :class:`EquivariantMap`
    :param u: the argument
    :type u: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :param phi: the reparametrization
    :type phi: :class:`CircleDiffeo`
    :param q: the Sobolev index of the norm
    :type q: float
    :returns: ||F(u o phi) - F(u) o phi||_q / (1 + ||F(u)||_q)
    :rtype: float
    """
    Fu = F(u)
    lhs = F(composeField(u, phi))
    rhs = composeField(Fu, phi)
    return relativeResidual(sobolevNorm(lhs-rhs, q), sobolevNorm(Fu, q))

def transportIdentityResidual(F, w, fd_step, q):
    """
    Check DF(w).(w') = (F(w))' with the directional derivative
    approximated by the central difference
    (F(w + eps w') - F(w - eps w'))/(2 eps).

    :param F: the map
    :type F: :class:`EquivariantMap`
    :param w: the point
    :type w: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :param fd_step: the finite-difference step eps
    :type fd_step: float
    :param q: the Sobolev index of the norm
    :type q: float
    :returns: ||DF(w).(w') - (F(w))'||_q / (1 + ||(F(w))'||_q)
    :rtype: float
    """
    if not fd_step > 0.:
        raise ValueError('finite-difference step must be positive')
    dw = derivative(w)
    directional = (F(w + fd_step*dw) - F(w - fd_step*dw))*(0.5/fd_step)
    transported = derivative(F(w))
    return relativeResidual(sobolevNorm(directional-transported, q),
                            sobolevNorm(transported, q))
