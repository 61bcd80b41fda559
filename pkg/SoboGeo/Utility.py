# This module contains the error classes and small helpers that are
# needed in various places.
#

import os, sys
import numpy as N

# Errors

class SoboGeoError(Exception):
    pass

class GridError(SoboGeoError, ValueError):
    pass

class DimensionError(SoboGeoError, ValueError):
    pass

class BandError(SoboGeoError, ValueError):
    pass

class InvalidSymbolError(SoboGeoError, ValueError):
    pass

class InvalidDiffeoError(SoboGeoError, ValueError):
    pass

class DegenerateCurveError(SoboGeoError, ValueError):
    pass

class ConfigError(SoboGeoError, ValueError):
    pass

#
# Numerical acceptance failures: the input was acceptable, but the
# mathematics rejected the computation.
#
class NumericalAcceptanceError(SoboGeoError, ArithmeticError):
    pass

class NearDegenerateDiffeoError(NumericalAcceptanceError):
    pass

class FlowDegenerateError(NumericalAcceptanceError):

    def __init__(self, message, time):
        NumericalAcceptanceError.__init__(self, message)
        self.time = time

class GeodesicLeftChartError(NumericalAcceptanceError):

    def __init__(self, message, time):
        NumericalAcceptanceError.__init__(self, message)
        self.time = time

class IntegratorAccuracyError(NumericalAcceptanceError):

    def __init__(self, message, drift):
        NumericalAcceptanceError.__init__(self, message)
        self.drift = drift

class PossiblyConjugateError(NumericalAcceptanceError):

    def __init__(self, message, sigma_min, jacobian_norm):
        NumericalAcceptanceError.__init__(self, message)
        self.sigma_min = sigma_min
        self.jacobian_norm = jacobian_norm

#
# Print a warning with reasonable line breaks.
#
def warning(text):
    words = text.split()
    text = 'Warning:'
    l = len(text)
    while words:
        lw = len(words[0])
        if l + lw + 1 < 60:
            text = text + ' ' + words[0]
            l = l + lw + 1
        else:
            text = text + '\n' + 9*' ' + words[0]
            l = lw + 9
        words = words[1:]
    sys.stderr.write(text+"\n")

#
# Number of worker threads, from SOBOGEO_THREADS or the hardware.
#
def threadCount():
    value = os.environ.get('SOBOGEO_THREADS')
    if value:
        try:
            n = int(value)
        except ValueError:
            raise ConfigError('SOBOGEO_THREADS must be an integer, not %r'
                              % value)
        return max(1, n)
    return os.cpu_count() or 1

#
# Relative difference with a +1 regularization of the denominator
#
def relativeResidual(difference, reference):
    return difference/(1.+reference)

#
# Grid of n equispaced points on [0, 2pi)
#
def grid(n):
    return 2.*N.pi*N.arange(n)/n

def isPowerOfTwo(n):
    return n > 0 and (n & (n-1)) == 0
