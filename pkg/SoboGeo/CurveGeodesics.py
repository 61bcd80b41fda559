# Geodesics of constant-coefficient Sobolev metrics on the space of
# immersed curves.
#

"""
Geodesics in the space of curves

Geodesics are computed for the metric G restricted to curves of band
K_b, in the real Fourier basis of
:class:`~SoboGeo.CurveSpace.CurveDiscretization`. The state is the pair
(x, p) of curve coefficients and momentum covector, with the Hamiltonian

  H(x, p) = 1/2 p^T G(x)^(-1) p

and Hamilton's equations dx/dt = G(x)^(-1) p, dp/dt = -dH/dx,
integrated by the classical fourth-order Runge-Kutta method. The
gradient dH/dx = -1/2 v^T (dG/dx) v with v = G(x)^(-1) p is evaluated
by central finite differences of G_x(v, v), all coefficient directions
at once.

Every accepted path is checked for two things after each step: the
curve must stay immersed, and the relative energy drift must stay
below the option `energy_tolerance`.

The boundary value problem (Log) is solved by shooting, see
:mod:`~SoboGeo.Shooting`.
"""

__docformat__ = 'restructuredtext'

from SoboGeo import Trajectory
from SoboGeo.CircleGroup import EquivariantMap
from SoboGeo.CurveSpace import Curve, CurveTangent, CurveDiscretization, \
                              quadratureSize
from SoboGeo.PeriodicFields import fromRealCoefficients, sobolevNorm
from SoboGeo.Shooting import ShootingSolver, ShootingReport, \
                             finiteDifferenceJacobian
from SoboGeo.ThreadManager import parallelMap
from SoboGeo.Utility import DegenerateCurveError, DimensionError, \
                            GeodesicLeftChartError, IntegratorAccuracyError
from scipy import linalg
import numpy as N


class HamiltonianSystem(object):

    """
    Hamilton's equations for the geodesics of G on curves of band K_b

    Instances are read-only after construction and can be shared
    between threads.
    """

    def __init__(self, discretization, metric, fd_step):
        """
        :param discretization: the basis and quadrature grid
        :type discretization: :class:`~SoboGeo.CurveSpace.CurveDiscretization`
        :param metric: the metric coefficients
        :type metric: :class:`~SoboGeo.CurveSpace.MetricCoefficients`
        :param fd_step: the finite-difference step for dG/dx
        :type fd_step: float
        """
        if not fd_step > 0.:
            raise ValueError('finite-difference step must be positive')
        self.discretization = discretization
        self.metric = metric
        self.fd_step = fd_step
        disc = discretization
        # derivative values of all basis directions, shape (D, n, d)
        directions = N.zeros((disc.d, disc.nb, disc.n, disc.d))
        for alpha in range(disc.d):
            directions[alpha, :, :, alpha] = disc.basis_derivative.T
        self.directions = N.reshape(directions,
                                    (disc.dimension, disc.n, disc.d))

    def velocity(self, x, p):
        """
        :returns: the velocity v = G(x)^(-1) p and the energy H(x, p)
        :rtype: tuple
        :raises numpy.linalg.LinAlgError: if G(x) is not positive definite
        """
        disc = self.discretization
        G = disc.scalarMetricMatrix(x, self.metric)
        P = disc.blocks(p)
        V = linalg.cho_solve(linalg.cho_factor(G), P)
        return V.T.ravel(), 0.5*N.sum(P*V)

    def gradient(self, x, v):
        """
        :returns: dH/dx at fixed momentum, given the velocity v
        :rtype: numpy.ndarray
        """
        disc = self.discretization
        dc = N.dot(disc.basis_derivative, disc.blocks(x))
        shifted = self.fd_step*self.directions
        plus = disc.batchEnergy(dc + shifted, v, self.metric)
        minus = disc.batchEnergy(dc - shifted, v, self.metric)
        return -0.25*(plus-minus)/self.fd_step

    def rhs(self, x, p):
        v, H = self.velocity(x, p)
        return v, -self.gradient(x, v)

    def energy(self, x, p):
        return self.velocity(x, p)[1]

    def momentum(self, x, v):
        """
        :returns: the momentum p = G(x) v
        """
        disc = self.discretization
        G = disc.scalarMetricMatrix(x, self.metric)
        return N.dot(G, disc.blocks(v)).T.ravel()


def _integrate(system, x0, p0, steps, T, tolerance, callback=None):
    h = float(T)/steps
    x = N.array(x0, N.float64)
    p = N.array(p0, N.float64)
    H0 = system.energy(x, p)
    times = [0.]
    states = [x]
    momenta = [p]
    energies = [H0]
    if callback is not None:
        callback(0, {'step': 0, 'time': 0., 'energy': H0})
    for step in range(1, steps+1):
        t = step*h
        try:
            k1, l1 = system.rhs(x, p)
            k2, l2 = system.rhs(x+0.5*h*k1, p+0.5*h*l1)
            k3, l3 = system.rhs(x+0.5*h*k2, p+0.5*h*l2)
            k4, l4 = system.rhs(x+h*k3, p+h*l3)
        except N.linalg.LinAlgError:
            raise GeodesicLeftChartError('metric matrix lost positive'
                                         ' definiteness at t = %g' % t, t)
        x = x + (h/6.)*(k1+2.*k2+2.*k3+k4)
        p = p + (h/6.)*(l1+2.*l2+2.*l3+l4)
        margin = system.discretization.immersionMargin(x)
        if not margin > 0.:
            raise GeodesicLeftChartError('curve stopped being immersed at'
                                         ' t = %g' % t, t)
        try:
            H = system.energy(x, p)
        except N.linalg.LinAlgError:
            raise GeodesicLeftChartError('metric matrix lost positive'
                                         ' definiteness at t = %g' % t, t)
        if H0 > 0.:
            drift = abs(H-H0)/H0
            if not drift <= tolerance:
                raise IntegratorAccuracyError('relative energy drift %g'
                                              ' at t = %g' % (drift, t),
                                              drift)
        times.append(t)
        states.append(x)
        momenta.append(p)
        energies.append(H)
        if callback is not None:
            callback(step, {'step': step, 'time': t, 'energy': H})
    return times, states, momenta, energies


class GeodesicIntegrator(Trajectory.TrajectoryGenerator):

    """
    Integrator for the geodesic initial value problem in the space of
    immersed curves

    The integration is started by calling the integrator object with
    the initial curve and velocity. All the keyword options can be
    specified either when creating the integrator or when calling it.

    The following data items are available to actions: "step", "time",
    "energy".
    """

    def __init__(self, metric, **options):
        """
        :param metric: the metric coefficients
        :type metric: :class:`~SoboGeo.CurveSpace.MetricCoefficients`
        :keyword steps: the number of Runge-Kutta steps (default: 200,
                        at least 16)
        :type steps: int
        :keyword K_b: the band of the state space (default: 16)
        :type K_b: int
        :keyword T: the final time (default: 1)
        :type T: float
        :keyword fd_step_metric: the finite-difference step for dG/dx
                                 (default: 1e-5 (1 + max |x_0|))
        :type fd_step_metric: float
        :keyword n_quadrature: the number of quadrature points (default:
                               twice the sampling grid of the initial curve,
                               at least 4(2K_b+2))
        :type n_quadrature: int
        :keyword energy_tolerance: the admissible relative energy drift
                                   (default: 1e-3)
        :type energy_tolerance: float
        :keyword actions: a list of actions to be executed periodically
        :type actions: list
        """
        Trajectory.TrajectoryGenerator.__init__(self, options)
        self.metric = metric

    default_options = {'steps': 200, 'K_b': 16, 'T': 1.,
                       'fd_step_metric': None, 'n_quadrature': None,
                       'energy_tolerance': 1.e-3, 'actions': []}

    available_data = ['step', 'time', 'energy']

    def system(self, c0):
        """
        :returns: the Hamiltonian system and the initial coefficients of c0
        :rtype: tuple
        """
        K_b = self.getOption('K_b')
        if K_b < 1:
            raise ValueError('state band K_b must be positive')
        n = self.getOption('n_quadrature')
        if n is None:
            n = quadratureSize(K_b, c0.K)
        disc = CurveDiscretization(K_b, c0.d, n)
        x0 = c0.field.realCoefficients(K_b)
        fd_step = self.getOption('fd_step_metric')
        if fd_step is None:
            fd_step = 1.e-5*(1.+N.max(N.abs(x0)))
        return HamiltonianSystem(disc, self.metric, fd_step), x0

    def __call__(self, c0, u, **options):
        """
        :param c0: the initial curve
        :type c0: :class:`~SoboGeo.CurveSpace.Curve`
        :param u: the initial velocity
        :type u: :class:`~SoboGeo.CurveSpace.CurveTangent`
        :returns: the geodesic path
        :rtype: :class:`~SoboGeo.Trajectory.GeodesicPath`
        """
        self.setCallOptions(options)
        self.checkOptions()
        if u.d != c0.d:
            raise DimensionError('velocity of dimension %d at a curve in R^%d'
                                 % (u.d, c0.d))
        system, x0 = self.system(c0)
        v0 = u.field.realCoefficients(system.discretization.K_b)
        return self.integrateState(system, x0, system.momentum(x0, v0))

    def integrateState(self, system, x0, p0):
        """
        Integrate Hamilton's equations from an initial state.

        :returns: the geodesic path
        :rtype: :class:`~SoboGeo.Trajectory.GeodesicPath`
        """
        steps = self.getOption('steps')
        if steps < 16:
            raise ValueError('at least 16 steps are required')
        self.getActions()
        try:
            trace = _integrate(system, x0, p0, steps, self.getOption('T'),
                               self.getOption('energy_tolerance'),
                               self.runActions if self.actions else None)
        finally:
            self.cleanupActions()
        disc = system.discretization
        return Trajectory.GeodesicPath(*trace, d=disc.d, K_b=disc.K_b)

    def endpointFunction(self, system, x0):
        """
        :returns: the thread-safe function mapping initial velocity
                  coefficients to the coefficients of Exp(x0, v)(T)
        """
        steps = self.getOption('steps')
        if steps < 16:
            raise ValueError('at least 16 steps are required')
        T = self.getOption('T')
        tolerance = self.getOption('energy_tolerance')

        def endpoint(v):
            p0 = system.momentum(x0, v)
            return _integrate(system, x0, p0, steps, T, tolerance)[1][-1]
        return endpoint


#
# Functional interface
#
def hamiltonian(x, p, m, d=2, n=None):
    """
    :param x: curve coefficients in the real Fourier basis
    :type x: numpy.ndarray
    :param p: momentum coefficients
    :type p: numpy.ndarray
    :param m: the metric coefficients
    :type m: :class:`~SoboGeo.CurveSpace.MetricCoefficients`
    :param d: the codomain dimension
    :type d: int
    :param n: the number of quadrature points (default: that of
              :class:`GeodesicIntegrator` for curves of band up to
              2K_b+1)
    :type n: int
    :returns: H = 1/2 p^T G(x)^(-1) p
    :rtype: float
    :raises DegenerateCurveError: if x is not an immersed curve
    """
    x = N.asarray(x, N.float64)
    K_b = (len(x)//d)//2
    if n is None:
        n = quadratureSize(K_b)
    disc = CurveDiscretization(K_b, d, n)
    if not disc.immersionMargin(x) > 0.:
        raise DegenerateCurveError('curve is not immersed')
    return HamiltonianSystem(disc, m, 1.).energy(x, N.asarray(p, N.float64))

def expCurve(c0, u, m, **options):
    """
    :param c0: the initial curve
    :type c0: :class:`~SoboGeo.CurveSpace.Curve`
    :param u: the initial velocity
    :type u: :class:`~SoboGeo.CurveSpace.CurveTangent`
    :param m: the metric coefficients
    :type m: :class:`~SoboGeo.CurveSpace.MetricCoefficients`
    :keyword options: see :class:`GeodesicIntegrator`
    :returns: the geodesic t -> Exp(c0, t u), 0 <= t <= T
    :rtype: :class:`~SoboGeo.Trajectory.GeodesicPath`
    """
    return GeodesicIntegrator(m, **options)(c0, u)

def dexpJacobian(c0, u, m, fd_step=1.e-6, **options):
    """
    :param fd_step: the finite-difference step in the velocity
    :type fd_step: float
    :keyword options: see :class:`GeodesicIntegrator`
    :returns: the Jacobian of u -> Exp(c0, u)(1) in the real Fourier
              basis, of size d(2K_b+1); the columns are evaluated
              concurrently
    :rtype: numpy.ndarray
    """
    integrator = GeodesicIntegrator(m, **options)
    system, x0 = integrator.system(c0)
    v0 = u.field.realCoefficients(system.discretization.K_b)
    return finiteDifferenceJacobian(integrator.endpointFunction(system, x0),
                                    v0, fd_step, parallelMap)

_geodesic_options = list(GeodesicIntegrator.default_options)

def logCurve(c0, c1, m, max_iter=20, tol=1.e-10, damping=0., init='difference',
             jacobian=None, fd_step=1.e-6, conjugacy_threshold=1.e-8,
             **options):
    """
    Solve Exp(c0, u)(1) = c1 for u by shooting.

    :param c0: the initial curve
    :type c0: :class:`~SoboGeo.CurveSpace.Curve`
    :param c1: the final curve
    :type c1: :class:`~SoboGeo.CurveSpace.Curve`
    :param m: the metric coefficients
    :type m: :class:`~SoboGeo.CurveSpace.MetricCoefficients`
    :param max_iter: the maximal number of solver updates
    :type max_iter: int
    :param tol: the H^n norm of the endpoint mismatch at which the solve
                has converged
    :type tol: float
    :param damping: the Levenberg-Marquardt parameter (0: Gauss-Newton)
    :type damping: float
    :param init: "difference" starts from u = c1 - c0, "multiscale"
                 from the solution at band K_b/2
    :type init: str
    :param jacobian: a function of the velocity coefficients returning
                     the Jacobian, replacing the finite-difference Jacobian
    :param fd_step: the finite-difference step of the Jacobian
    :type fd_step: float
    :keyword options: geodesic integrator options (see
                      :class:`GeodesicIntegrator`) and "actions" for the
                      solver
    :returns: the shooting report; a solve that does not converge within
              max_iter updates is reported with converged = False
    :rtype: :class:`~SoboGeo.Shooting.ShootingReport`
    :raises PossiblyConjugateError: if the shooting Jacobian is
                                    numerically singular
    """
    if c0.d != c1.d:
        raise DimensionError('curves in R^%d and R^%d' % (c0.d, c1.d))
    actions = options.pop('actions', [])
    for name in options:
        if name not in _geodesic_options:
            raise ValueError('undefined option: ' + name)
    if options.get('n_quadrature') is None:
        K = max(c0.K, c1.K)
        K_b = options.get('K_b', GeodesicIntegrator.default_options['K_b'])
        options['n_quadrature'] = quadratureSize(K_b, K)
    integrator = GeodesicIntegrator(m, **options)
    system, x0 = integrator.system(c0)
    disc = system.discretization
    y = c1.field.realCoefficients(disc.K_b)
    endpoint = integrator.endpointFunction(system, x0)

    if init == 'difference':
        v0 = y - x0
    elif init == 'multiscale':
        if disc.K_b < 2:
            v0 = y - x0
        else:
            coarse_options = dict(options, K_b=disc.K_b//2)
            coarse = logCurve(c0, c1, m, max_iter, tol, damping, 'difference',
                              None, fd_step, conjugacy_threshold,
                              **coarse_options)
            v0 = coarse.u.field.realCoefficients(disc.K_b)
    else:
        raise ValueError('unknown shooting initialization %r' % init)

    def residual(v):
        return endpoint(v) - y

    def norm(r):
        return sobolevNorm(fromRealCoefficients(r, disc.d), m.n)

    if jacobian is None:
        jacobian = lambda v: finiteDifferenceJacobian(endpoint, v, fd_step,
                                                      parallelMap)
    solver = ShootingSolver(max_iter=max_iter, tol=tol, damping=damping,
                            conjugacy_threshold=conjugacy_threshold,
                            actions=actions)
    v, rn, iterations, sigma_min, sigma_max, converged = \
        solver(residual, jacobian, v0, norm)
    u = CurveTangent(fromRealCoefficients(v, disc.d))
    return ShootingReport(u, rn, iterations, sigma_min, sigma_max, converged)

def curveExpMap(m, d=2, **options):
    """
    :param m: the metric coefficients
    :type m: :class:`~SoboGeo.CurveSpace.MetricCoefficients`
    :param d: the codomain dimension of the curves
    :type d: int
    :keyword options: see :class:`GeodesicIntegrator`
    :returns: the map w = (c, u) -> Exp(c, u)(1) on paired fields of
              dimension 2d, with the result padded to the band of w
    :rtype: :class:`~SoboGeo.CircleGroup.EquivariantMap`
    """
    integrator = GeodesicIntegrator(m, **options)

    def evaluate(w):
        c = Curve(w[0:d])
        u = CurveTangent(w[d:2*d], c)
        return integrator(c, u).stateField(-1).withBand(w.K)
    return EquivariantMap(evaluate, 2*d, d, 'curve Exp')
