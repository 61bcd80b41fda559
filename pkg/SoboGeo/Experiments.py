# Experiment configuration, orchestration and the sobogeo command.
#

"""
Reproducible experiments and the `sobogeo` command

An experiment is described by a JSON configuration::

    {"task": "exp",
     "inputs": {"c0": {"shape": "ellipse", "a": 2, "b": 1},
                "u": {"modes": {"1": [0.0, 0.3]}}},
     "metric": {"n": 2, "a": [1, 1, 1]},
     "options": {"N": 128, "K_b": 16, "steps": 200}}

and run with ``sobogeo exp --config exp.json --out results``. Inputs are
either names of field files (relative to the configuration file) or
inline descriptions:

 - curves: {"shape": "circle", "R": 1}, {"shape": "ellipse", "a": 2,
   "b": 1}, {"shape": "bumpy", "amplitude": 0.1, "frequency": 5}
 - fields: {"modes": {"k": amplitude}, "sin_modes": {...},
   "constant": value}, where amplitudes are numbers for scalar fields
   and lists for vector fields; {"decay": s} for the coefficients k^(-s);
   {"random": {"amplitude": a, "decay": s, "d": d, "K": K}} drawn with
   the configured seed
 - diffeomorphisms: {"rotation": alpha}, {"displacement": field}

Every run writes manifest.json with the resolved configuration and the
library version; the manifest is itself a valid configuration.
"""

__docformat__ = 'restructuredtext'

from SoboGeo import CurveSpace, CurveGeodesics, EPDiff, FieldIO, Utility
from SoboGeo.__pkginfo__ import __version__
from SoboGeo.CircleGroup import CircleDiffeo, rotation, identity, \
                                pointwiseMap, multiplierMap, \
                                equivarianceResidual, transportIdentityResidual
from SoboGeo.CurveSpace import Curve, CurveTangent
from SoboGeo.PeriodicFields import PeriodicField, decayExponent, normLadder, \
                                   sobolevInner, symbolFromSpec
from SoboGeo.ProgressOutput import ProgressOutput
from SoboGeo.Trajectory import LogOutput, writeTrace
from SoboGeo.Utility import ConfigError, NumericalAcceptanceError
import argparse, copy, json, os, sys
import numpy as N


tasks = ('exp', 'log', 'epdiff', 'group-log', 'equivariance', 'transport',
         'regularity', 'norm')

required_inputs = {'exp': ('c0', 'u'), 'log': ('c0', 'c1'),
                   'epdiff': ('u0',), 'group-log': ('phi1',),
                   'equivariance': ('field', 'phi'), 'transport': ('field',),
                   'regularity': ('field',), 'norm': ('field',)}

maps = ('square', 'cube', 'multiplier', 'curve_exp')


class ExperimentConfig(object):

    """
    Validated experiment configuration

    Options not given in the configuration take the values of
    `default_options`; option K_b defaults to N/8.
    """

    default_options = {'N': 128, 'K_b': None, 'steps': 200, 'T': 1.,
                       'tol': 1.e-10, 'max_iter': 20, 'damping': 0.,
                       'init': 'difference', 'fd_step': 1.e-6,
                       'fd_step_metric': None, 'energy_tolerance': 1.e-3,
                       'q': 2., 'q_max': 4., 'dq': 0.5, 'k_min': 4,
                       'regularity_cap': 4., 'reference_exponent': 0.,
                       'map': 'square', 'symbol': None, 'seed': 0,
                       'checkpoint_every': None, 'momentum_tolerance': None}

    default_metric = {'n': 2, 'a': [1., 1., 1.]}
    default_inertia = {'kind': 'inertia_power', 'n': 1}

    def __init__(self, task, inputs=None, metric=None, inertia=None,
                 options=None, output=None, base_directory='.'):
        self.task = task
        self.inputs = dict(inputs or {})
        self.metric = copy.deepcopy(metric or self.default_metric)
        self.inertia = copy.deepcopy(inertia or self.default_inertia)
        self.options = dict(self.default_options)
        for name, value in (options or {}).items():
            if name not in self.default_options:
                raise ConfigError('undefined option: ' + name)
            self.options[name] = value
        if self.options['K_b'] is None:
            self.options['K_b'] = self.options['N']//8
        self.output = output
        self.base_directory = base_directory
        self.validate()

    @classmethod
    def fromJSON(cls, data, task=None, base_directory='.'):
        """
        :param data: a configuration or a run manifest
        :type data: dict
        :param task: the task requested on the command line
        :type task: str
        :rtype: :class:`ExperimentConfig`
        """
        if not isinstance(data, dict):
            raise ConfigError('configuration must be a JSON object')
        if 'config' in data and 'version' in data:
            data = data['config']
        unknown = set(data) - set(['task', 'inputs', 'metric', 'inertia',
                                   'options', 'output'])
        if unknown:
            raise ConfigError('unknown configuration keys: %s'
                              % ', '.join(sorted(unknown)))
        config_task = data.get('task')
        if task is not None and config_task is not None \
           and task != config_task:
            raise ConfigError('configuration is for task %r, not %r'
                              % (config_task, task))
        return cls(task or config_task, data.get('inputs'), data.get('metric'),
                   data.get('inertia'), data.get('options'),
                   data.get('output'), base_directory)

    @classmethod
    def fromFile(cls, filename, task=None):
        data = FieldIO.readJSON(filename)
        return cls.fromJSON(data, task,
                            os.path.dirname(os.path.abspath(filename)))

    def validate(self):
        """
        :raises ConfigError: if the configuration is not valid
        """
        if self.task not in tasks:
            raise ConfigError('unknown task %r' % self.task)
        options = self.options
        N_samples = options['N']
        if not isinstance(N_samples, int) or N_samples < 32 \
           or not Utility.isPowerOfTwo(N_samples):
            raise ConfigError('N must be a power of two >= 32')
        for name in ('tol', 'energy_tolerance', 'fd_step', 'T', 'dq'):
            if not float(options[name]) > 0.:
                raise ConfigError('option %s must be positive' % name)
        for name in ('fd_step_metric', 'momentum_tolerance'):
            if options[name] is not None and not float(options[name]) > 0.:
                raise ConfigError('option %s must be positive' % name)
        if not 1 <= options['K_b'] < N_samples//2:
            raise ConfigError('K_b must lie between 1 and N/2-1')
        if options['steps'] < 16:
            raise ConfigError('at least 16 steps are required')
        if options['init'] not in ('difference', 'multiscale'):
            raise ConfigError('init must be "difference" or "multiscale"')
        if options['map'] not in maps:
            raise ConfigError('unknown map %r' % options['map'])
        try:
            self.metricCoefficients()
            self.inertiaOperator()
            if options['symbol'] is not None:
                symbolFromSpec(options['symbol'])
        except (ValueError, KeyError, TypeError) as error:
            raise ConfigError(str(error))
        needed = required_inputs[self.task]
        if self.task == 'equivariance' and options['map'] == 'curve_exp' \
           or self.task == 'transport' and options['map'] == 'curve_exp':
            needed = ('c', 'u') + needed[1:]
        for name in needed:
            if name not in self.inputs:
                raise ConfigError('task %s needs input %r' % (self.task, name))
        for name, spec in sorted(self.inputs.items()):
            if isinstance(spec, str) \
               and not os.path.isfile(self.path(spec)):
                raise ConfigError('input file %s does not exist' % spec)

    def path(self, filename):
        return os.path.join(self.base_directory, filename)

    def metricCoefficients(self):
        return CurveSpace.metricFromSpec(self.metric)

    def inertiaOperator(self):
        return EPDiff.InertiaOperator(symbolFromSpec(self.inertia))

    def resolved(self):
        """
        :returns: the complete configuration, with all defaults filled in
        :rtype: dict
        """
        return {'task': self.task, 'inputs': copy.deepcopy(self.inputs),
                'metric': copy.deepcopy(self.metric),
                'inertia': copy.deepcopy(self.inertia),
                'options': dict(self.options), 'output': self.output}

    #
    # Inputs
    #
    def band(self):
        return self.options['N']//2 - 1

    def field(self, name):
        """
        :rtype: :class:`~SoboGeo.PeriodicFields.PeriodicField`
        """
        return fieldFromSpec(self.inputs[name], self.options['N'],
                             self.options['seed'], self.base_directory)

    def curve(self, name):
        """
        :rtype: :class:`~SoboGeo.CurveSpace.Curve`
        """
        return Curve(self.field(name))

    def diffeo(self, name):
        """
        :rtype: :class:`~SoboGeo.CircleGroup.CircleDiffeo`
        """
        return diffeoFromSpec(self.inputs[name], self.options['N'],
                              self.options['seed'], self.base_directory)


def _amplitudes(value):
    return N.atleast_1d(N.array(value, N.float64))

def fieldFromSpec(spec, N_samples, seed=0, base_directory='.'):
    """
    :param spec: a file name or an inline field description
    :param N_samples: the sampling grid size of inline fields
    :type N_samples: int
    :param seed: the seed of random fields
    :type seed: int
    :rtype: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    """
    K = N_samples//2 - 1
    if isinstance(spec, str):
        return FieldIO.readField(os.path.join(base_directory, spec))
    if not isinstance(spec, dict):
        raise ConfigError('invalid field description %r' % (spec,))
    if 'shape' in spec:
        parameters = dict((key, value) for key, value in spec.items()
                          if key != 'shape')
        constructor = {'circle': CurveSpace.circle,
                       'ellipse': CurveSpace.ellipse,
                       'bumpy': CurveSpace.bumpyCircle}.get(spec['shape'])
        if constructor is None:
            raise ConfigError('unknown curve shape %r' % spec['shape'])
        try:
            return constructor(K=K, **parameters).field
        except TypeError as error:
            raise ConfigError(str(error))
    if 'samples' in spec or 'coeffs_re' in spec:
        return FieldIO.fieldFromJSON(spec)
    if 'decay' in spec:
        d = int(spec.get('d', 1))
        k = N.arange(K+1, dtype=N.float64)
        values = N.zeros(K+1)
        values[1:] = float(spec.get('amplitude', 1.))*k[1:]**(-float(spec['decay']))
        return PeriodicField(N.repeat(values[:, N.newaxis], d, axis=1))
    if 'random' in spec:
        parameters = spec['random']
        d = int(parameters.get('d', 1))
        K_r = min(int(parameters.get('K', 8)), K)
        rng = N.random.default_rng(seed)
        k = N.arange(K_r+1, dtype=N.float64)
        weights = float(parameters.get('amplitude', 0.1)) * \
                  (1.+k)**(-float(parameters.get('decay', 3.)))
        array = N.zeros((K+1, d), N.complex128)
        array[:K_r+1] = weights[:, N.newaxis] * \
            (rng.standard_normal((K_r+1, d))
             + 1j*rng.standard_normal((K_r+1, d)))
        return PeriodicField(array)
    if 'modes' in spec or 'sin_modes' in spec or 'constant' in spec:
        entries = []
        for key in ('modes', 'sin_modes'):
            for k, value in spec.get(key, {}).items():
                entries.append((key, int(k), _amplitudes(value)))
        constant = _amplitudes(spec.get('constant', 0.))
        d = int(spec.get('d', max([len(a) for _, _, a in entries]
                                  + [len(constant)])))
        array = N.zeros((K+1, d), N.complex128)
        array[0] = constant*N.ones(d)
        for key, k, amplitude in entries:
            if not 1 <= k <= K:
                raise ConfigError('mode %d outside 1..%d' % (k, K))
            if key == 'modes':
                array[k] += 0.5*amplitude
            else:
                array[k] -= 0.5j*amplitude
        return PeriodicField(array)
    raise ConfigError('invalid field description %r' % (spec,))

def diffeoFromSpec(spec, N_samples, seed=0, base_directory='.'):
    """
    :param spec: a file name, {"rotation": alpha},
                 {"displacement": field description} or {"identity": true}
    :rtype: :class:`~SoboGeo.CircleGroup.CircleDiffeo`
    """
    if isinstance(spec, str):
        return FieldIO.readDiffeo(os.path.join(base_directory, spec))
    if isinstance(spec, dict):
        if 'rotation' in spec:
            return rotation(float(spec['rotation']))
        if spec.get('identity'):
            return identity()
        if 'displacement' in spec:
            return CircleDiffeo(fieldFromSpec(spec['displacement'], N_samples,
                                              seed, base_directory))
    raise ConfigError('invalid diffeomorphism description %r' % (spec,))


#
# Regularity
#
def regularityReport(u, k_min=4, q_max=4., dq=0.5, endpoints=None, cap=4.,
                     reference_exponent=0.):
    """
    Empirical regularity of a field

    Exponents are clipped at cap: a spectrum that decays faster than
    k^(-cap) over the fitted modes counts as smooth at the resolution.
    With endpoint fields, the verdict is "preserved" iff the clipped
    exponent of u is at least the smallest clipped endpoint exponent
    minus 0.3; without, iff it is at least reference_exponent - 0.3.

    :param u: the field, usually a solved initial velocity
    :type u: :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :param endpoints: the endpoints of the boundary value problem
    :type endpoints: list of :class:`~SoboGeo.PeriodicFields.PeriodicField`
    :returns: the report, with keys decay_exponent, norm_ladder,
              growth_ratios, verdict and, with endpoints,
              endpoint_exponents
    :rtype: dict
    """
    exponent = decayExponent(u, k_min)
    ladder = normLadder(u, q_max, dq)
    ratios = [b[1]/a[1] if a[1] > 0. else None
              for a, b in zip(ladder[:-1], ladder[1:])]
    report = {'decay_exponent': exponent,
              'norm_ladder': [list(entry) for entry in ladder],
              'growth_ratios': ratios}
    if endpoints:
        endpoint_exponents = [decayExponent(c, k_min) for c in endpoints]
        report['endpoint_exponents'] = endpoint_exponents
        reference = min([min(e, cap) for e in endpoint_exponents])
    else:
        reference = min(reference_exponent, cap)
    preserved = min(exponent, cap) >= reference - 0.3
    report['verdict'] = 'preserved' if preserved else 'lost'
    return report

def _json(value):
    # inf/nan become strings, so that reports remain strict JSON
    if isinstance(value, float) and not N.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return dict((k, _json(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [_json(v) for v in value]
    if isinstance(value, N.floating):
        return _json(float(value))
    return value


#
# Tasks
#
class _Run(object):

    def __init__(self, config, out, emit_plots, verbose):
        self.config = config
        self.options = config.options
        self.out = out
        self.emit_plots = emit_plots
        self.verbose = verbose
        self.files = []
        self.plots = []

    def write(self, name, data):
        FieldIO.writeJSON(os.path.join(self.out, name), _json(data))
        self.files.append(name)

    def writeTable(self, name, writer):
        writer(os.path.join(self.out, name))
        self.files.append(name)

    def plot(self, series, x, y):
        self.plots.extend([(series, a, b) for a, b in zip(x, y)])

    def plotCurve(self, series, field):
        values = field.gridValues(max(64, 2*field.K+2))
        self.plot(series, values[:, 0], values[:, 1])

    def plotSpectrum(self, series, field):
        amplitude = N.sqrt(N.sum(abs(field.array)**2, axis=1))
        self.plot(series, N.arange(field.K+1), amplitude)

    def actions(self, steps):
        if self.verbose:
            return [ProgressOutput(steps)]
        return []

    def geodesicOptions(self):
        o = self.options
        return {'steps': o['steps'], 'K_b': o['K_b'], 'T': o['T'],
                'fd_step_metric': o['fd_step_metric'],
                'energy_tolerance': o['energy_tolerance']}

    def equivariantMap(self, d):
        name = self.options['map']
        if name == 'square':
            return pointwiseMap(lambda v: v**2, d, 'square')
        if name == 'cube':
            return pointwiseMap(lambda v: v**3, d, 'cube')
        if name == 'multiplier':
            spec = self.options['symbol'] or self.config.inertia
            return multiplierMap(symbolFromSpec(spec), d)
        return CurveGeodesics.curveExpMap(self.config.metricCoefficients(),
                                          d//2, **self.geodesicOptions())

    def mapArgument(self):
        if self.options['map'] == 'curve_exp':
            c = self.config.field('c')
            u = self.config.field('u')
            K = max(c.K, u.K)
            return PeriodicField(N.concatenate([c.withBand(K).array,
                                                u.withBand(K).array], axis=1))
        return self.config.field('field')

    # exp: geodesic.csv, endpoint.json
    def exp(self):
        c0 = self.config.curve('c0')
        u = CurveTangent(self.config.field('u'), c0)
        path = CurveGeodesics.expCurve(c0, u, self.config.metricCoefficients(),
                                       actions=self.actions(
                                           self.options['steps']),
                                       **self.geodesicOptions())
        self.writeTable('geodesic.csv', path.writeCSV)
        self.write('endpoint.json', FieldIO.fieldToJSON(path.stateField(-1)))
        self.plot('energy', path.times, path.energy_trace)
        self.plotCurve('c0', c0.field)
        self.plotCurve('endpoint', path.stateField(-1))

    # log: shooting.json
    def log(self):
        o = self.options
        c0 = self.config.curve('c0')
        c1 = self.config.curve('c1')
        actions = []
        if self.verbose:
            actions = [LogOutput(sys.stderr, data=['residual_norm',
                                                   'sigma_min'])]
        report = CurveGeodesics.logCurve(
            c0, c1, self.config.metricCoefficients(), max_iter=o['max_iter'],
            tol=o['tol'], damping=o['damping'], init=o['init'],
            fd_step=o['fd_step'], actions=actions, **self.geodesicOptions())
        self.write('shooting.json', FieldIO.reportToJSON(report))
        self.plotSpectrum('u_spectrum', report.u.field)

    # epdiff: epdiff.csv, flows.json
    def epdiff(self):
        o = self.options
        u0 = self.config.field('u0')
        geodesic = EPDiff.eulerArnoldIntegrate(
            u0, self.config.inertiaOperator(), o['T'], o['steps'],
            checkpoint_every=o['checkpoint_every'],
            energy_tolerance=o['energy_tolerance'],
            momentum_tolerance=o['momentum_tolerance'],
            actions=self.actions(o['steps']))
        self.writeTable('epdiff.csv', geodesic.writeCSV)
        self.write('flows.json',
                   {'times': list(geodesic.times),
                    'flows': [FieldIO.diffeoToJSON(phi)
                              for phi in geodesic.flows],
                    'momentum_residual':
                        EPDiff.momentumConservationResidual(geodesic),
                    'energy_drift': geodesic.energyDrift()})
        self.plot('energy', geodesic.times, geodesic.energy_trace)
        self.plot('momentum_residual', geodesic.times,
                  geodesic.momentumResiduals())
        final = geodesic.flows[-1]
        theta = Utility.grid(64)
        self.plot('flow', theta, final(theta))

    # group-log: shooting.json
    def group_log(self):
        o = self.options
        phi1 = self.config.diffeo('phi1')
        base = self.config.diffeo('base') if 'base' in self.config.inputs \
               else None
        report = EPDiff.groupLog(phi1, self.config.inertiaOperator(), o['T'],
                                 o['steps'], base=base,
                                 K_b=min(o['K_b'], max(1, phi1.K)),
                                 max_iter=o['max_iter'], tol=o['tol'],
                                 damping=o['damping'], fd_step=o['fd_step'],
                                 energy_tolerance=o['energy_tolerance'])
        self.write('shooting.json', FieldIO.reportToJSON(report))
        self.plotSpectrum('u_spectrum', report.u)

    # equivariance: residual.json
    def equivariance(self):
        u = self.mapArgument()
        phi = self.config.diffeo('phi')
        F = self.equivariantMap(u.d)
        residual = equivarianceResidual(F, u, phi, self.options['q'])
        self.write('residual.json', {'kind': 'equivariance', 'map': F.name,
                                     'q': self.options['q'],
                                     'residual': residual})

    # transport: residual.json
    def transport(self):
        u = self.mapArgument()
        F = self.equivariantMap(u.d)
        residual = transportIdentityResidual(F, u, self.options['fd_step'],
                                             self.options['q'])
        self.write('residual.json', {'kind': 'transport', 'map': F.name,
                                     'q': self.options['q'],
                                     'fd_step': self.options['fd_step'],
                                     'residual': residual})

    # norm: norm.json
    def norm(self):
        u = self.config.field('field')
        q = self.options['q']
        squared = sobolevInner(u, u, q)
        ladder = normLadder(u, self.options['q_max'], self.options['dq'])
        self.write('norm.json', {'q': q, 'norm_squared': squared,
                                 'norm': float(N.sqrt(max(squared, 0.))),
                                 'norm_ladder': [list(e) for e in ladder]})
        self.plot('norm_ladder', [e[0] for e in ladder],
                  [e[1] for e in ladder])

    # regularity: regularity.json
    def regularity(self):
        o = self.options
        u = self.config.field('field')
        endpoints = [self.config.field(name) for name in ('c0', 'c1')
                     if name in self.config.inputs]
        report = regularityReport(u, o['k_min'], o['q_max'], o['dq'],
                                  endpoints, o['regularity_cap'],
                                  o['reference_exponent'])
        self.write('regularity.json', report)
        self.plotSpectrum('spectrum', u)
        self.plot('norm_ladder', [e[0] for e in report['norm_ladder']],
                  [e[1] for e in report['norm_ladder']])

def run(config, out=None, emit_plots=False, verbose=False):
    """
    Run an experiment and write its artefacts.

    :param config: the experiment
    :type config: :class:`ExperimentConfig`
    :param out: the output directory (default: the configured output,
                or "sobogeo-out")
    :type out: str
    :param emit_plots: if True, write plots.csv
    :type emit_plots: bool
    :param verbose: if True, report progress on stderr
    :type verbose: bool
    :returns: the names of the files written
    :rtype: list of str
    """
    out = out or config.output or 'sobogeo-out'
    os.makedirs(out, exist_ok=True)
    job = _Run(config, out, emit_plots, verbose)
    getattr(job, config.task.replace('-', '_'))()
    if emit_plots:
        writeTrace(os.path.join(out, 'plots.csv'), ['series', 'x', 'y'],
                   job.plots)
        job.files.append('plots.csv')
    files = job.files + ['manifest.json']
    manifest = {'version': __version__, 'task': config.task,
                'config': config.resolved(), 'outputs': files}
    FieldIO.writeJSON(os.path.join(out, 'manifest.json'), _json(manifest))
    return files


#
# Command line
#
exit_codes = {'config': 2, 'numerical': 3, 'io': 4}

def _exitCode(error):
    if isinstance(error, NumericalAcceptanceError):
        return exit_codes['numerical']
    if isinstance(error, (OSError, json.JSONDecodeError)):
        return exit_codes['io']
    return exit_codes['config']

def _reportError(error, code):
    sys.stderr.write(json.dumps({'error': error.__class__.__name__,
                                 'message': str(error), 'exit_code': code},
                                sort_keys=True) + '\n')

def argumentParser():
    parser = argparse.ArgumentParser(
        prog='sobogeo',
        description='Sobolev geometry of curves and circle diffeomorphisms')
    parser.add_argument('task', choices=tasks, help='the computation to run')
    parser.add_argument('--config', required=True,
                        help='JSON configuration or run manifest')
    parser.add_argument('--out', default=None, help='output directory')
    parser.add_argument('--emit-plots', action='store_true',
                        help='write plots.csv (series,x,y)')
    parser.add_argument('--verbose', action='store_true',
                        help='report progress on stderr')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    return parser

def main(argv=None):
    """
    Entry point of the sobogeo command.

    :returns: the exit status: 0 on success, 2 for invalid input or
              configuration, 3 when a numerical acceptance test failed,
              4 for I/O failures
    :rtype: int
    """
    args = argumentParser().parse_args(argv)
    try:
        config = ExperimentConfig.fromFile(args.config, args.task)
        run(config, args.out, args.emit_plots, args.verbose)
    except (ValueError, KeyError, TypeError, OSError,
            NumericalAcceptanceError) as error:
        code = _exitCode(error)
        _reportError(error, code)
        return code
    return 0

if __name__ == '__main__':
    sys.exit(main())
