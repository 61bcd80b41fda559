# JSON files for fields, diffeomorphisms and shooting reports.
#

"""
JSON input and output of fields, diffeomorphisms and reports

A field file is either in sample form::

    {"d": 2, "n_samples": 4, "samples": [[1.0, 0.0], [0.0, 1.0], ...]}

with samples at theta_j = 2 pi j/n_samples, or in coefficient form::

    {"d": 1, "K": 3, "coeffs_re": [[...], ...], "coeffs_im": [[...], ...]}

with one row of d numbers for every k = 0..K. Readers accept both forms,
writers emit the sample form unless told otherwise. A diffeomorphism is
stored by its displacement field under the key "displacement".

All writers sort keys and print floats with repr, so equal objects
produce byte-identical files.
"""

__docformat__ = 'restructuredtext'

from SoboGeo.PeriodicFields import PeriodicField, analyze
from SoboGeo.CircleGroup import CircleDiffeo
from SoboGeo.Utility import DimensionError, GridError
import json
import numpy as N


def fieldToJSON(u, form='samples'):
    """
    :param u: the field
    :type u: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :param form: "samples" or "coefficients"
    :type form: str
    :rtype: dict
    """
    if form == 'samples':
        n = 2*u.K+2
        return {'d': u.d, 'n_samples': n,
                'samples': u.gridValues(n).tolist()}
    elif form == 'coefficients':
        return {'d': u.d, 'K': u.K,
                'coeffs_re': u.array.real.tolist(),
                'coeffs_im': u.array.imag.tolist()}
    raise ValueError('unknown field form %r' % form)

def _rows(values, d, name):
    array = N.array(values, N.float64)
    if array.ndim == 1 and d == 1:
        array = array[:, N.newaxis]
    if array.ndim != 2 or array.shape[1] != d:
        raise DimensionError('%s must have %d values per row' % (name, d))
    return array

def fieldFromJSON(data):
    """
    :param data: a field in sample or coefficient form
    :type data: dict
    :rtype: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :raises DimensionError: if the declared and actual shapes differ
    :raises GridError: if the number of samples is odd
    """
    try:
        d = int(data['d'])
        if 'samples' in data:
            samples = _rows(data['samples'], d, 'samples')
            if 'n_samples' in data and len(samples) != int(data['n_samples']):
                raise GridError('n_samples is %s, but %d samples are given'
                                % (data['n_samples'], len(samples)))
            return analyze(samples)
        re = _rows(data['coeffs_re'], d, 'coeffs_re')
        im = _rows(data['coeffs_im'], d, 'coeffs_im')
    except KeyError as error:
        raise ValueError('field description lacks key %s' % error)
    if re.shape != im.shape:
        raise DimensionError('coeffs_re and coeffs_im differ in shape')
    if 'K' in data and len(re) != int(data['K'])+1:
        raise DimensionError('K is %s, but %d coefficients are given'
                             % (data['K'], len(re)))
    return PeriodicField(re + 1j*im)

def diffeoToJSON(phi, form='samples'):
    return {'displacement': fieldToJSON(phi.displacement, form)}

def diffeoFromJSON(data):
    """
    :rtype: :class:`~SoboGeo.CircleGroup.CircleDiffeo`
    """
    try:
        displacement = data['displacement']
    except KeyError:
        raise ValueError('diffeomorphism description lacks key displacement')
    return CircleDiffeo(fieldFromJSON(displacement))

def reportToJSON(report, form='samples'):
    """
    :param report: a shooting report
    :type report: :class:`~SoboGeo.Shooting.ShootingReport`
    :rtype: dict
    """
    u = getattr(report.u, 'field', report.u)
    return {'u': fieldToJSON(u, form),
            'residual_norm': report.residual_norm,
            'iterations': report.iterations,
            'sigma_min': report.sigma_min,
            'jacobian_norm': report.jacobian_norm,
            'converged': report.converged}

#
# Files
#
def writeJSON(filename, data):
    with open(filename, 'w') as file:
        json.dump(data, file, sort_keys=True, indent=2, allow_nan=True)
        file.write('\n')

def readJSON(filename):
    with open(filename) as file:
        return json.load(file)

def writeField(filename, u, form='samples'):
    writeJSON(filename, fieldToJSON(u, form))

def readField(filename):
    """
    :returns: the field in the file; a shooting report yields its
              velocity, a diffeomorphism its displacement
    :rtype: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    """
    data = readJSON(filename)
    if 'u' in data and 'd' not in data:
        data = data['u']
    elif 'displacement' in data:
        data = data['displacement']
    return fieldFromJSON(data)

def writeDiffeo(filename, phi, form='samples'):
    writeJSON(filename, diffeoToJSON(phi, form))

def readDiffeo(filename):
    return diffeoFromJSON(readJSON(filename))
