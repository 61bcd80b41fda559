# This module implements trajectory generators, trajectory actions
# and the containers for computed geodesic paths.
#

"""
Trajectory generators, step actions and geodesic paths

Every long-running integration (curve geodesics, Euler-Arnold flows,
shooting) is a :class:`TrajectoryGenerator`. Its options come from three
levels: the arguments of the call, the arguments given at construction
and the class attribute `default_options`. Actions in the option
`actions` are called at regular step intervals with a dictionary of the
current step data, for example to write a protocol::

    integrator = GeodesicIntegrator(metric, steps=200)
    path = integrator(c0, u, actions=[StandardLogOutput(20)])
"""

__docformat__ = 'restructuredtext'

from SoboGeo.PeriodicFields import fromRealCoefficients, decayExponent
import csv, sys
import numpy as N

#
# Option handling and actions shared by all step-wise computations
#
class TrajectoryGenerator(object):

    """
    Base class of integrators and iterative solvers

    Subclasses define `default_options` and call :meth:`getActions`,
    :meth:`runActions` and :meth:`cleanupActions` around their step loop.
    """

    default_options = {}

    def __init__(self, options):
        self.options = options
        self.call_options = {}
        self.actions = []

    def setCallOptions(self, options):
        self.call_options = options

    def getActions(self):
        try:
            self.actions = list(self.getOption('actions') or [])
        except ValueError:
            self.actions = []
        steps = self.getOption('steps') if self._hasOption('steps') else None
        for action in self.actions:
            action.start(self, steps)
        return self.actions

    def runActions(self, step, data):
        for action in self.actions:
            if action.isActive(step):
                action(step, data)

    def cleanupActions(self):
        for action in self.actions:
            action.cleanup()

    def _hasOption(self, option):
        return any(option in level for level in
                   (self.call_options, self.options, self.default_options))

    def getOption(self, option):
        """
        :returns: the value given at call time, else at construction,
                  else the default
        :raises ValueError: for an option the generator does not know
        """
        for level in (self.call_options, self.options, self.default_options):
            if option in level:
                return level[option]
        raise ValueError('undefined option: ' + option)

    def checkOptions(self):
        for name in list(self.options) + list(self.call_options):
            if name not in self.default_options:
                raise ValueError('undefined option: ' + name)


class TrajectoryAction(object):

    """
    Action run inside a step loop

    This is an abstract base class. Subclasses implement __call__, which
    receives the step number and a dictionary of step data.
    """

    def __init__(self, first, last, skip):
        """
        :param first: the first active step; negative values count from
                      the end
        :type first: int
        :param last: the last active step, or None for no limit
        :type last: int
        :param skip: the distance between two active steps
        :type skip: int
        """
        self.first = first
        self.last = last
        self.skip = max(1, skip)
        self._first = first
        self._last = last

    def start(self, trajectory_generator, steps):
        self._first = self.first
        self._last = self.last
        if steps is not None:
            if self._first < 0:
                self._first += steps
            if self._last is not None and self._last < 0:
                self._last += steps + 1

    def isActive(self, step):
        if step < self._first:
            return False
        if self._last is not None and step > self._last:
            return False
        return (step - self._first) % self.skip == 0

    def __call__(self, step, data):
        raise NotImplementedError

    def cleanup(self):
        pass

class LogOutput(TrajectoryAction):

    """
    Text protocol of the step data

    Every active step produces a line "Step n" followed by one
    "name: value" line per requested data item.
    """

    def __init__(self, file, data=None, first=0, last=None, skip=1):
        """
        :param file: a stream, or the name of a file to create
        :param data: the names of the items to write (default: "time"
                     and "energy"); items a generator does not provide
                     are skipped
        :param first: the first active step
        :type first: int
        :param last: the last active step, or None
        :type last: int
        :param skip: the distance between two active steps
        :type skip: int
        """
        TrajectoryAction.__init__(self, first, last, skip)
        self.destination = file
        self.data = data
        self.opened = None
        self.file = None

    default_data = ['time', 'energy']

    def start(self, trajectory_generator, steps):
        TrajectoryAction.start(self, trajectory_generator, steps)
        if isinstance(self.destination, str):
            self.opened = open(self.destination, 'w')
            self.file = self.opened
        else:
            self.file = self.destination

    def __call__(self, step, data):
        self.file.write('Step %d\n' % step)
        names = self.default_data if self.data is None else self.data
        for name in names:
            if name in data:
                self.file.write('%s: %r\n' % (name, data[name]))

    def cleanup(self):
        if self.opened is not None:
            self.opened.close()
            self.opened = None

class StandardLogOutput(LogOutput):

    """
    LogOutput of time and energy to sys.stdout
    """

    def __init__(self, skip=50):
        LogOutput.__init__(self, sys.stdout, None, 0, None, skip)

#
# Tabular traces
#
def writeTrace(file, header, rows):
    """
    Write a CSV table with a header line.

    :param file: a file object or a file name
    :param header: the column names
    :type header: list of str
    :param rows: the rows, sequences of numbers
    """
    if isinstance(file, str):
        with open(file, 'w', newline='') as stream:
            return writeTrace(stream, header, rows)
    writer = csv.writer(file, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([x if isinstance(x, str) else repr(float(x))
                         for x in row])

#
# Geodesic paths in the space of curves
#
class GeodesicPath(object):

    """
    Solution of the geodesic initial value problem in the space of curves

    States and momenta are stored as rows of coefficient vectors in the
    real Fourier basis of band K_b (see
    :meth:`~SoboGeo.PeriodicFields.PeriodicField.realCoefficients`).
    """

    def __init__(self, times, states, momenta, energy_trace, d, K_b):
        self.times = N.asarray(times, N.float64)
        self.states = N.asarray(states, N.float64)
        self.momenta = N.asarray(momenta, N.float64)
        self.energy_trace = N.asarray(energy_trace, N.float64)
        self.d = d
        self.K_b = K_b

    def __len__(self):
        return len(self.times)

    def __repr__(self):
        return 'GeodesicPath(%d states, d=%d, K_b=%d)' % (len(self), self.d,
                                                          self.K_b)

    def stateField(self, i):
        """
        :returns: the i-th state as a field
        :rtype: :class:`~SoboGeo.PeriodicFields.PeriodicField`
        """
        return fromRealCoefficients(self.states[i], self.d)

    def stateAt(self, i):
        """
        :returns: the i-th state as a curve
        :rtype: :class:`~SoboGeo.CurveSpace.Curve`
        """
        from SoboGeo.CurveSpace import Curve
        return Curve(self.stateField(i))

    def endpoint(self):
        """
        :returns: the final curve
        :rtype: :class:`~SoboGeo.CurveSpace.Curve`
        """
        return self.stateAt(-1)

    def energyDrift(self):
        """
        :returns: max |H(t) - H(0)| / H(0), or 0 for the constant path
        :rtype: float
        """
        e0 = self.energy_trace[0]
        if e0 == 0.:
            return 0.
        return N.max(N.abs(self.energy_trace - e0))/e0

    def regularityAlong(self, k_min):
        """
        :returns: the spectral decay exponent of every stored state
        :rtype: numpy.ndarray
        """
        return N.array([decayExponent(self.stateField(i), k_min)
                        for i in range(len(self))])

    def writeCSV(self, file):
        """
        Write the columns t, energy and the state coefficients.
        """
        header = ['t', 'energy'] + ['x%d' % i
                                    for i in range(self.states.shape[1])]
        rows = [[t, e] + list(x) for t, e, x in zip(self.times,
                                                    self.energy_trace,
                                                    self.states)]
        writeTrace(file, header, rows)
