# This module implements the Gauss-Newton/Levenberg-Marquardt solver
# used for geodesic boundary value problems.
#

"""
Geodesic shooting

A boundary value problem Exp(x, u) = y is solved for the initial
velocity u by Newton-type iteration on the residual
R(u) = Exp(x, u) - y. The square Jacobian of R is the differential of
the exponential map; its smallest singular value is monitored, and
a numerically singular Jacobian indicates that the endpoints are
(nearly) conjugate along the geodesic.
"""

__docformat__ = 'restructuredtext'

from SoboGeo import Trajectory, Utility
from SoboGeo.Utility import PossiblyConjugateError
from scipy import linalg
import numpy as N


class ShootingReport(object):

    """
    Result of a shooting solve

    :ivar u: the solved initial velocity
    :ivar residual_norm: the norm of the endpoint mismatch
    :ivar iterations: the number of solver updates
    :ivar sigma_min: the smallest singular value of the final Jacobian
    :ivar jacobian_norm: the largest singular value of the final Jacobian
    :ivar converged: True if residual_norm <= tolerance
    """

    def __init__(self, u, residual_norm, iterations, sigma_min,
                 jacobian_norm, converged):
        self.u = u
        self.residual_norm = float(residual_norm)
        self.iterations = int(iterations)
        self.sigma_min = float(sigma_min)
        self.jacobian_norm = float(jacobian_norm)
        self.converged = bool(converged)

    def __repr__(self):
        return 'ShootingReport(converged=%s, iterations=%d, ' \
               'residual_norm=%g, sigma_min=%g)' \
               % (self.converged, self.iterations, self.residual_norm,
                  self.sigma_min)


class ShootingSolver(Trajectory.TrajectoryGenerator):

    """
    Gauss-Newton / Levenberg-Marquardt solver for square systems
    R(x) = 0

    The solve is started by calling the solver object. All the keyword
    options can be specified either when creating the solver or when
    calling it.

    The following data items are available to actions: "iteration",
    "residual_norm", "sigma_min".
    """

    def __init__(self, **options):
        """
        :keyword max_iter: the maximal number of updates (default: 20)
        :type max_iter: int
        :keyword tol: the residual norm at which the solve stops
                      (default: 1e-10)
        :type tol: float
        :keyword damping: initial Levenberg-Marquardt parameter, relative
                          to the largest squared singular value; 0 gives
                          plain Gauss-Newton steps (default)
        :type damping: float
        :keyword conjugacy_threshold: relative singular value below which
                                      the Jacobian counts as singular
                                      (default: 1e-8)
        :type conjugacy_threshold: float
        :keyword actions: a list of actions to be executed every iteration
        :type actions: list
        """
        Trajectory.TrajectoryGenerator.__init__(self, options)

    default_options = {'max_iter': 20, 'tol': 1.e-10, 'damping': 0.,
                       'conjugacy_threshold': 1.e-8, 'actions': []}

    available_data = ['iteration', 'residual_norm', 'sigma_min']

    def __call__(self, residual, jacobian, x0, norm, **options):
        """
        :param residual: the function R
        :param jacobian: a function returning the Jacobian of R at x
        :param x0: the initial guess
        :type x0: numpy.ndarray
        :param norm: the norm in which the residual is measured
        :returns: the tuple (x, residual norm, iterations, sigma_min,
                  sigma_max, converged)
        :raises PossiblyConjugateError: if the Jacobian is numerically
                                        singular
        """
        self.setCallOptions(options)
        self.checkOptions()
        tol = self.getOption('tol')
        max_iter = self.getOption('max_iter')
        damping = self.getOption('damping')
        threshold = self.getOption('conjugacy_threshold')
        if not tol > 0.:
            raise ValueError('shooting tolerance must be positive')
        if damping < 0.:
            raise ValueError('damping must be non-negative')
        self.getActions()
        try:
            x = N.array(x0, N.float64)
            r = residual(x)
            rn = norm(r)
            iterations = 0
            converged = False
            while True:
                J = N.asarray(jacobian(x), N.float64)
                sv = linalg.svdvals(J)
                sigma_max = sv[0]
                sigma_min = sv[-1]
                if not sigma_min >= threshold*sigma_max or sigma_max == 0.:
                    raise PossiblyConjugateError(
                        'shooting Jacobian is numerically singular'
                        ' (sigma_min = %g, |J| = %g)' % (sigma_min, sigma_max),
                        sigma_min, sigma_max)
                if sigma_min < 1.e-4*sigma_max:
                    Utility.warning('shooting Jacobian is poorly conditioned'
                                    ' (sigma_min/|J| = %g)'
                                    % (sigma_min/sigma_max))
                self.runActions(iterations, {'iteration': iterations,
                                             'residual_norm': rn,
                                             'sigma_min': sigma_min})
                if rn <= tol:
                    converged = True
                    break
                if iterations >= max_iter:
                    break
                if damping == 0.:
                    x = x - linalg.lstsq(J, r)[0]
                    r = residual(x)
                    rn = norm(r)
                else:
                    accepted, x, r, rn, damping = \
                        self._dampedStep(residual, norm, J, sigma_max, x, r,
                                         rn, damping)
                    if not accepted:
                        break
                iterations += 1
        finally:
            self.cleanupActions()
        return x, rn, iterations, sigma_min, sigma_max, converged

    def _dampedStep(self, residual, norm, J, sigma_max, x, r, rn, damping):
        JtJ = N.dot(J.T, J)
        Jtr = N.dot(J.T, r)
        for attempt in range(12):
            A = JtJ + damping*sigma_max**2*N.identity(len(x))
            x_new = x - linalg.solve(A, Jtr, assume_a='pos')
            r_new = residual(x_new)
            rn_new = norm(r_new)
            if rn_new < rn:
                return True, x_new, r_new, rn_new, damping/3.
            damping = 10.*damping
        return False, x, r, rn, damping


def finiteDifferenceJacobian(function, x, step, evaluate=None):
    """
    Central finite-difference Jacobian of a vector-valued function

    :param function: the function
    :param x: the point
    :type x: numpy.ndarray
    :param step: the finite-difference step
    :type step: float
    :param evaluate: a map function used to evaluate the 2 len(x)
                     perturbed points (default: sequential evaluation)
    :returns: the Jacobian matrix, one column per component of x
    :rtype: numpy.ndarray
    """
    if not step > 0.:
        raise ValueError('finite-difference step must be positive')
    if evaluate is None:
        evaluate = lambda f, items: [f(item) for item in items]
    points = []
    for i in range(len(x)):
        for sign in (1., -1.):
            p = N.array(x, N.float64)
            p[i] += sign*step
            points.append(p)
    values = evaluate(function, points)
    columns = [(values[2*i]-values[2*i+1])/(2.*step) for i in range(len(x))]
    return N.transpose(columns)
