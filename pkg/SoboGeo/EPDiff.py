# Right-invariant Sobolev metrics on the diffeomorphism group of the
# circle: the Euler-Arnold (EPDiff) equation, group Exp and Log.
#

"""
Geodesics of right-invariant metrics on the diffeomorphism group of S^1

The metric at the identity is <u, v> = int (A u) v dtheta for a Fourier
multiplier A, the inertia operator. In terms of the momentum m = A u the
geodesic equation reduces to the Euler-Arnold equation

  m_t = -(u m_theta + 2 u_theta m),

which for A = Id - d^2/dtheta^2 is the Camassa-Holm equation. It is
solved pseudospectrally: products are evaluated on a grid padded by a
factor 2, which removes all aliasing from the retained modes. The flow
psi_t = u_t o psi and its tangent map psi' are integrated in the same
Runge-Kutta stages as the momentum, at the points of an equispaced grid.

Along every geodesic the energy 1/2 <A u, u> and the transported momentum
m(t, psi_t) (psi_t')^2 are constant; both are checked.
"""

__docformat__ = 'restructuredtext'

from SoboGeo import Trajectory, PeriodicFields
from SoboGeo.CircleGroup import CircleDiffeo, compose, composeField, invert, \
                               rotation, supDistance
from SoboGeo.PeriodicFields import PeriodicField, analyze, synthesize, \
                                   sobolevInner, symbolSpec
from SoboGeo.Shooting import ShootingSolver, ShootingReport, \
                             finiteDifferenceJacobian
from SoboGeo.ThreadManager import parallelMap
from SoboGeo.Utility import DimensionError, FlowDegenerateError, \
                            IntegratorAccuracyError, grid
import numpy as N


class InertiaOperator(object):

    """
    Positive Fourier multiplier A defining the metric at the identity
    """

    def __init__(self, symbol):
        """
        :param symbol: the symbol of A
        :type symbol: :class:`~SoboGeo.PeriodicFields.MultiplierSymbol`
        """
        self.symbol = symbol

    def __repr__(self):
        return 'InertiaOperator(%r)' % self.symbol

    def __call__(self, u):
        return PeriodicFields.applyMultiplier(u, self.symbol)

    def inverse(self, m):
        return PeriodicFields.applyMultiplier(m, self.symbol, inverse=True)

    def values(self, K):
        """
        :returns: a(0), ..., a(K)
        :rtype: numpy.ndarray
        """
        return self.symbol(N.arange(K+1))

    def spec(self):
        return symbolSpec(self.symbol)


def innerProduct(u, v, A):
    """
    :param u: first vector field
    :type u: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :param v: second vector field
    :type v: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :param A: the inertia operator
    :type A: :class:`InertiaOperator`
    :returns: <A u, v> in L^2
    :rtype: float
    """
    return sobolevInner(A(u), v, 0.)


class GroupGeodesic(object):

    """
    Geodesic in the diffeomorphism group, stored at checkpoints

    :ivar times: the checkpoint times
    :ivar velocities: the fields u(t)
    :ivar momenta: the fields m(t) = A u(t)
    :ivar flows: the diffeomorphisms phi(t)
    :ivar energy_trace: 1/2 <A u(t), u(t)>
    :ivar theta: the grid on which the flow was integrated
    :ivar flow_values: phi(t) at the grid points, one row per checkpoint
    :ivar flow_derivatives: phi'(t) at the grid points
    """

    def __init__(self, times, velocities, momenta, flows, energy_trace,
                 theta, flow_values, flow_derivatives):
        self.times = N.asarray(times, N.float64)
        self.velocities = velocities
        self.momenta = momenta
        self.flows = flows
        self.energy_trace = N.asarray(energy_trace, N.float64)
        self.theta = theta
        self.flow_values = N.asarray(flow_values)
        self.flow_derivatives = N.asarray(flow_derivatives)

    def __len__(self):
        return len(self.times)

    def __repr__(self):
        return 'GroupGeodesic(%d checkpoints, K=%d)' \
               % (len(self), self.velocities[0].K)

    def energyDrift(self):
        e0 = self.energy_trace[0]
        if e0 == 0.:
            return 0.
        return N.max(N.abs(self.energy_trace - e0))/e0

    def momentumResiduals(self):
        """
        :returns: ||m(t, phi_t) (phi_t')^2 - m(0)||_inf / ||m(0)||_inf
                  at every checkpoint
        :rtype: numpy.ndarray
        """
        m0 = self.momenta[0].gridValues(len(self.theta))[:, 0]
        scale = N.max(N.abs(m0))
        if scale == 0.:
            return N.zeros(len(self))
        residuals = []
        for m, psi, dpsi in zip(self.momenta, self.flow_values,
                                self.flow_derivatives):
            transported = synthesize(m, psi)[:, 0]*dpsi**2
            residuals.append(N.max(N.abs(transported-m0))/scale)
        return N.array(residuals)

    def writeCSV(self, file):
        """
        Write the columns t, energy, momentum_residual and the real
        Fourier coefficients of the velocity.
        """
        K = self.velocities[0].K
        header = ['t', 'energy', 'momentum_residual'] + \
                 ['u%d' % i for i in range(2*K+1)]
        rows = [[t, e, r] + list(u.realCoefficients())
                for t, e, r, u in zip(self.times, self.energy_trace,
                                      self.momentumResiduals(),
                                      self.velocities)]
        Trajectory.writeTrace(file, header, rows)


#
# Pseudospectral Euler-Arnold solver
#
class _EulerArnoldSystem(object):

    # Spectral state: the complex coefficients m_0..m_K of a scalar field.

    def __init__(self, A, K, padding):
        self.K = K
        self.a = A.values(K)
        self.k = N.arange(K+1)
        self.n = padding*(2*K+2)

    def toGrid(self, coefficients):
        spectrum = N.zeros(self.n//2+1, N.complex128)
        spectrum[:self.K+1] = self.n*coefficients
        return N.fft.irfft(spectrum, self.n)

    def fromGrid(self, values):
        return N.fft.rfft(values)[:self.K+1]/self.n

    def evaluate(self, coefficients, points):
        weights = N.where(self.k == 0, 1., 2.)
        phases = N.exp(1j*N.outer(points, self.k))
        return N.dot(phases, weights*coefficients).real

    def rhs(self, m, psi, dpsi):
        u = m/self.a
        du = 1j*self.k*u
        dm = 1j*self.k*m
        product = self.toGrid(u)*self.toGrid(dm) + \
                  2.*self.toGrid(du)*self.toGrid(m)
        m_t = -self.fromGrid(product)
        m_t[0] = m_t[0].real
        psi_t = self.evaluate(u, psi)
        dpsi_t = self.evaluate(du, psi)*dpsi
        return m_t, psi_t, dpsi_t

    def energy(self, m):
        weights = N.where(self.k == 0, 1., 2.)
        return N.pi*N.sum(weights*abs(m)**2/self.a)

    def momentumResidual(self, m0_values, m, psi, dpsi):
        scale = N.max(N.abs(m0_values))
        if scale == 0.:
            return 0.
        transported = self.evaluate(m, psi)*dpsi**2
        return N.max(N.abs(transported-m0_values))/scale


class EulerArnoldIntegrator(Trajectory.TrajectoryGenerator):

    """
    Integrator for the Euler-Arnold equation of a right-invariant metric
    on the diffeomorphism group of the circle

    The integration is started by calling the integrator object with the
    initial velocity. All the keyword options can be specified either
    when creating the integrator or when calling it.

    The following data items are available to actions: "step", "time",
    "energy".
    """

    def __init__(self, A, **options):
        """
        :param A: the inertia operator
        :type A: :class:`InertiaOperator`
        :keyword T: the final time (default: 1)
        :type T: float
        :keyword steps: the number of Runge-Kutta steps (default: 400,
                        at least 16)
        :type steps: int
        :keyword checkpoint_every: the number of steps between two stored
                                   states (default: steps/10); the final
                                   state is always stored
        :type checkpoint_every: int
        :keyword padding: the dealiasing factor of the product grid
                          (default: 2)
        :type padding: int
        :keyword energy_tolerance: the admissible relative energy drift
                                   (default: 1e-3)
        :type energy_tolerance: float
        :keyword momentum_tolerance: the admissible momentum transport
                                     residual at the checkpoints
                                     (default: None, not checked)
        :type momentum_tolerance: float
        :keyword actions: a list of actions to be executed periodically
        :type actions: list
        """
        Trajectory.TrajectoryGenerator.__init__(self, options)
        self.A = A

    default_options = {'T': 1., 'steps': 400, 'checkpoint_every': None,
                       'padding': 2, 'energy_tolerance': 1.e-3,
                       'momentum_tolerance': None, 'actions': []}

    available_data = ['step', 'time', 'energy']

    def __call__(self, u0, **options):
        """
        :param u0: the initial velocity
        :type u0: :class:`~SoboGeo.PeriodicFields.PeriodicField`, d=1
        :returns: the geodesic
        :rtype: :class:`GroupGeodesic`
        :raises IntegratorAccuracyError: if the energy drifts too much, or
                                         the transported momentum at a
                                         checkpoint exceeds
                                         momentum_tolerance
        :raises FlowDegenerateError: if the flow stops being monotone
        """
        self.setCallOptions(options)
        self.checkOptions()
        if u0.d != 1:
            raise DimensionError('the velocity must be a scalar field')
        steps = self.getOption('steps')
        if steps < 16:
            raise ValueError('at least 16 steps are required')
        padding = self.getOption('padding')
        if padding < 2:
            raise ValueError('dealiasing needs padding >= 2')
        every = self.getOption('checkpoint_every')
        if every is None:
            every = max(1, steps//10)
        T = float(self.getOption('T'))
        tolerance = self.getOption('energy_tolerance')
        momentum_tolerance = self.getOption('momentum_tolerance')
        K = u0.K
        n_flow = 2*(2*K+2)
        system = _EulerArnoldSystem(self.A, K, padding)
        theta = grid(n_flow)

        m = self.A.values(K)*u0.array[:, 0]
        psi = theta.copy()
        dpsi = N.ones(n_flow)
        E0 = system.energy(m)
        m0_values = system.evaluate(m, theta)
        h = T/steps
        checkpoints = [(0., m, psi, dpsi, E0)]

        self.getActions()
        try:
            self.runActions(0, {'step': 0, 'time': 0., 'energy': E0})
            for step in range(1, steps+1):
                t = step*h
                k1, p1, d1 = system.rhs(m, psi, dpsi)
                k2, p2, d2 = system.rhs(m+0.5*h*k1, psi+0.5*h*p1,
                                        dpsi+0.5*h*d1)
                k3, p3, d3 = system.rhs(m+0.5*h*k2, psi+0.5*h*p2,
                                        dpsi+0.5*h*d2)
                k4, p4, d4 = system.rhs(m+h*k3, psi+h*p3, dpsi+h*d3)
                m = m + (h/6.)*(k1+2.*k2+2.*k3+k4)
                psi = psi + (h/6.)*(p1+2.*p2+2.*p3+p4)
                dpsi = dpsi + (h/6.)*(d1+2.*d2+2.*d3+d4)
                if not dpsi.min() > 0.:
                    raise FlowDegenerateError('flow left the monotone regime'
                                              ' at t = %g' % t, t)
                E = system.energy(m)
                if E0 > 0.:
                    drift = abs(E-E0)/E0
                    if not drift <= tolerance:
                        raise IntegratorAccuracyError(
                            'relative energy drift %g at t = %g' % (drift, t),
                            drift)
                if step % every == 0 or step == steps:
                    if momentum_tolerance is not None:
                        residual = system.momentumResidual(m0_values, m,
                                                           psi, dpsi)
                        if not residual <= momentum_tolerance:
                            raise IntegratorAccuracyError(
                                'momentum transport residual %g at t = %g'
                                % (residual, t), residual)
                    checkpoints.append((t, m, psi, dpsi, E))
                self.runActions(step, {'step': step, 'time': t, 'energy': E})
        finally:
            self.cleanupActions()

        times = []
        velocities = []
        momenta = []
        flows = []
        energies = []
        for t, m, psi, dpsi, E in checkpoints:
            momentum = PeriodicField(m)
            times.append(t)
            momenta.append(momentum)
            velocities.append(self.A.inverse(momentum))
            flows.append(CircleDiffeo(analyze(psi-theta)))
            energies.append(E)
        return GroupGeodesic(times, velocities, momenta, flows, energies,
                             theta, [c[2] for c in checkpoints],
                             [c[3] for c in checkpoints])


def eulerArnoldIntegrate(u0, A, T=1., steps=400, **options):
    """
    :param u0: the initial velocity
    :type u0: :class:`~SoboGeo.PeriodicFields.PeriodicField`, d=1
    :param A: the inertia operator
    :type A: :class:`InertiaOperator`
    :param T: the final time
    :type T: float
    :param steps: the number of Runge-Kutta steps
    :type steps: int
    :keyword options: see :class:`EulerArnoldIntegrator`
    :rtype: :class:`GroupGeodesic`
    """
    return EulerArnoldIntegrator(A, T=T, steps=steps, **options)(u0)

def groupExp(X0, A, T=1., steps=400, base=None, **options):
    """
    :param X0: the initial velocity. With a base point psi, X0 is a
               tangent vector at psi in right-translated form X o psi.
    :type X0: :class:`~SoboGeo.PeriodicFields.PeriodicField`, d=1
    :param A: the inertia operator
    :type A: :class:`InertiaOperator`
    :param base: the base point psi (default: the identity)
    :type base: :class:`~SoboGeo.CircleGroup.CircleDiffeo`
    :returns: the endpoint of the geodesic, Exp_psi(X o psi) = Exp(X) o psi
    :rtype: :class:`~SoboGeo.CircleGroup.CircleDiffeo`
    """
    if base is None or base.isIdentity():
        return eulerArnoldIntegrate(X0, A, T, steps, **options).flows[-1]
    X = composeField(X0, invert(base))
    return compose(groupExp(X, A, T, steps, **options), base)

def momentumConservationResidual(g):
    """
    :param g: the geodesic
    :type g: :class:`GroupGeodesic`
    :returns: the maximum over all checkpoints of
              ||m(t, phi_t) (phi_t')^2 - m(0)||_inf / ||m(0)||_inf
    :rtype: float
    """
    return N.max(g.momentumResiduals())

def rotationConjugationResidual(X0, A, alpha, T=1., steps=400, **options):
    """
    :returns: the sup-distance between Exp(X0 o rho) and
              rho^(-1) o Exp(X0) o rho for the rotation rho by alpha
    :rtype: float
    """
    rho = rotation(alpha)
    lhs = groupExp(composeField(X0, rho), A, T, steps, **options)
    rhs = compose(invert(rho), compose(groupExp(X0, A, T, steps, **options),
                                       rho))
    return supDistance(lhs, rhs)

def groupLog(phi1, A, T=1., steps=400, base=None, K_b=None, max_iter=20,
             tol=1.e-10, damping=0., fd_step=1.e-6,
             conjugacy_threshold=1.e-8, jacobian=None, actions=None,
             **options):
    """
    Solve Exp(T X0) = phi1 for X0 by shooting on the displacement
    coefficients.

    :param phi1: the target
    :type phi1: :class:`~SoboGeo.CircleGroup.CircleDiffeo`
    :param A: the inertia operator
    :type A: :class:`InertiaOperator`
    :param base: the base point psi (default: the identity); the result
                 is the tangent vector at psi in right-translated form
    :type base: :class:`~SoboGeo.CircleGroup.CircleDiffeo`
    :param K_b: the band of the unknown velocity (default: that of phi1,
                at most 16)
    :type K_b: int
    :param tol: the sup-norm of the displacement mismatch at which the
                solve has converged
    :type tol: float
    :param jacobian: a function of the velocity coefficients returning
                     the Jacobian, replacing the finite-difference Jacobian
    :keyword options: see :class:`EulerArnoldIntegrator`
    :returns: the shooting report, with the velocity as field u
    :rtype: :class:`~SoboGeo.Shooting.ShootingReport`
    :raises PossiblyConjugateError: if the shooting Jacobian is
                                    numerically singular
    """
    if base is not None and not base.isIdentity():
        report = groupLog(compose(phi1, invert(base)), A, T, steps, None, K_b,
                          max_iter, tol, damping, fd_step, conjugacy_threshold,
                          jacobian, actions, **options)
        report.u = composeField(report.u, base)
        return report
    if K_b is None:
        K_b = max(1, min(phi1.K, 16))
    target = phi1.displacement.realCoefficients(K_b)
    n_check = max(32, 4*(2*K_b+2))
    integrator_options = dict(options, T=T, steps=steps)
    # the integrator object is not shared between threads
    EulerArnoldIntegrator(A, **integrator_options).checkOptions()

    def endpoint(x):
        X = PeriodicFields.fromRealCoefficients(x, 1)
        flow = EulerArnoldIntegrator(A, **integrator_options)(X).flows[-1]
        return flow.displacement.realCoefficients(K_b)

    def residual(x):
        return endpoint(x) - target

    def norm(r):
        field = PeriodicFields.fromRealCoefficients(r, 1)
        return N.max(N.abs(field.gridValues(n_check)))

    if jacobian is None:
        jacobian = lambda x: finiteDifferenceJacobian(endpoint, x, fd_step,
                                                      parallelMap)
    solver = ShootingSolver(max_iter=max_iter, tol=tol, damping=damping,
                            conjugacy_threshold=conjugacy_threshold,
                            actions=actions or [])
    x, rn, iterations, sigma_min, sigma_max, converged = \
        solver(residual, jacobian, target/float(T), norm)
    u = PeriodicFields.fromRealCoefficients(x, 1)
    return ShootingReport(u, rn, iterations, sigma_min, sigma_max, converged)
