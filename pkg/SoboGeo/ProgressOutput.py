# Progress reporting for long integrations.
#

"""
Progress display for integrations

With the `progressbar2 <https://pypi.python.org/pypi/progressbar2>`_
package installed, :class:`ProgressOutput` shows a progress bar with
elapsed time and ETA::

    37% |###############                           | 0:00:17 / ETA:  0:00:29

Without it, the percentage of steps done is rewritten in place.
"""

__docformat__ = 'restructuredtext'

try:
    import progressbar as pb
    pb_avail = True
except ImportError:
    pb_avail = False

import sys

from SoboGeo.Trajectory import TrajectoryAction


class _PercentDisplay(object):

    def __init__(self, total, stream):
        self.total = total
        self.stream = stream

    def show(self, step):
        self.stream.write('\r%d%%' % (100*step//self.total))
        self.stream.flush()

    def close(self):
        self.stream.write('\n')


class _BarDisplay(object):

    def __init__(self, total, stream):
        widgets = [pb.Percentage(), ' ', pb.Bar(), ' ', pb.Timer(),
                   ' / ', pb.ETA()]
        self.bar = pb.ProgressBar(widgets=widgets, max_value=total,
                                  fd=stream)
        self.started = False

    def show(self, step):
        if not self.started:
            self.bar.start()
            self.started = True
        self.bar.update(step)

    def close(self):
        self.bar.finish()


class ProgressOutput(TrajectoryAction):

    """
    A :class:`~SoboGeo.Trajectory.TrajectoryAction` that displays the
    fraction of steps done. The last update within skip steps of the
    end completes the display.
    """

    def __init__(self, steps, skip=None, stream=None):
        """
        :param steps: number of steps in the integration
        :type steps: int
        :param skip: number of steps between two updates (default:
                     one update per percent)
        :type skip: int
        :param stream: the output stream (default: sys.stderr)
        """
        if skip is None:
            skip = steps//100
        TrajectoryAction.__init__(self, 0, None, max(1, skip))
        self.steps = max(1, steps)
        self.stream = stream
        self.display = None
        self.done = False

    def start(self, trajectory_generator, steps):
        TrajectoryAction.start(self, trajectory_generator, steps)
        stream = sys.stderr if self.stream is None else self.stream
        display = _BarDisplay if pb_avail else _PercentDisplay
        self.display = display(self.steps, stream)
        self.done = False

    def __call__(self, step, data):
        if self.done:
            return
        if self.steps - step < self.skip:
            self.display.show(self.steps)
            self.display.close()
            self.done = True
        else:
            self.display.show(step)

    def cleanup(self):
        # an interrupted integration leaves the display open
        if self.display is not None and not self.done:
            self.display.close()
            self.done = True
