# File formats, trajectory actions and progress output
#

import unittest
import io, os, shutil, tempfile
import numpy as N
from SoboGeo import FieldIO, ProgressOutput, Utility
from SoboGeo.CircleGroup import CircleDiffeo
from SoboGeo.PeriodicFields import PeriodicField, fromFunction, synthesize
from SoboGeo.Shooting import ShootingReport
from SoboGeo.Trajectory import TrajectoryGenerator, TrajectoryAction, \
                               LogOutput, GeodesicPath, writeTrace
from SoboGeo.Utility import DimensionError, GridError, ConfigError


class FieldFileTest(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_sample_form(self):
        u = fromFunction(lambda t: N.transpose([N.cos(t), N.sin(2*t)]), 8)
        data = FieldIO.fieldToJSON(u)
        self.assertEqual(data['d'], 2)
        self.assertEqual(data['n_samples'], 8)
        self.assertEqual(len(data['samples']), 8)
        v = FieldIO.fieldFromJSON(data)
        self.assertTrue(N.allclose(u.array, v.array, atol=1.e-15))

    def test_coefficient_form(self):
        data = {'d': 1, 'K': 2, 'coeffs_re': [[1.], [0.5], [0.]],
                'coeffs_im': [[0.], [0.], [-0.25]]}
        u = FieldIO.fieldFromJSON(data)
        self.assertEqual(u.K, 2)
        theta = N.array([0.3])
        expected = 1. + N.cos(0.3) + 0.5*N.sin(0.6)
        self.assertAlmostEqual(u.gridValues(8)[0, 0], 2., 14)
        self.assertAlmostEqual(synthesize(u, theta)[0, 0], expected, 14)
        self.assertEqual(FieldIO.fieldToJSON(u, 'coefficients'), data)

    def test_invalid(self):
        self.assertRaises(DimensionError, FieldIO.fieldFromJSON,
                          {'d': 2, 'samples': [[1.], [2.]]})
        self.assertRaises(GridError, FieldIO.fieldFromJSON,
                          {'d': 1, 'n_samples': 4, 'samples': [1., 2.]})
        self.assertRaises(GridError, FieldIO.fieldFromJSON,
                          {'d': 1, 'samples': [1., 2., 3.]})
        self.assertRaises(DimensionError, FieldIO.fieldFromJSON,
                          {'d': 1, 'K': 3, 'coeffs_re': [[1.]],
                           'coeffs_im': [[0.]]})
        self.assertRaises(ValueError, FieldIO.fieldFromJSON, {'d': 1})
        self.assertRaises(ValueError, FieldIO.fieldToJSON,
                          PeriodicField(N.zeros(3)), 'table')

    def test_files(self):
        u = fromFunction(lambda t: 0.1*N.sin(t), 8)
        filename = os.path.join(self.directory, 'u.json')
        FieldIO.writeField(filename, u)
        with open(filename) as file:
            text = file.read()
        self.assertTrue(text.endswith('}\n'))
        self.assertTrue(N.allclose(FieldIO.readField(filename).array,
                                   u.array, atol=1.e-15))
        phi = CircleDiffeo(u)
        filename = os.path.join(self.directory, 'phi.json')
        FieldIO.writeDiffeo(filename, phi)
        self.assertTrue(N.allclose(FieldIO.readDiffeo(filename).array,
                                   phi.array, atol=1.e-15))
        self.assertTrue(N.allclose(FieldIO.readField(filename).array,
                                   u.array, atol=1.e-15))
        report = ShootingReport(u, 1.e-12, 2, 0.9, 1.1, True)
        filename = os.path.join(self.directory, 'report.json')
        FieldIO.writeJSON(filename, FieldIO.reportToJSON(report))
        data = FieldIO.readJSON(filename)
        self.assertEqual(data['iterations'], 2)
        self.assertEqual(data['converged'], True)
        self.assertTrue(N.allclose(FieldIO.readField(filename).array,
                                   u.array, atol=1.e-15))

    def test_deterministic(self):
        u = fromFunction(lambda t: N.exp(N.sin(t)), 16)
        first = os.path.join(self.directory, 'a.json')
        second = os.path.join(self.directory, 'b.json')
        FieldIO.writeField(first, u)
        FieldIO.writeField(second, u)
        with open(first, 'rb') as a, open(second, 'rb') as b:
            self.assertEqual(a.read(), b.read())


class Counter(TrajectoryAction):

    def __init__(self, first=0, last=None, skip=1):
        TrajectoryAction.__init__(self, first, last, skip)
        self.steps = []

    def __call__(self, step, data):
        self.steps.append(step)


class Generator(TrajectoryGenerator):

    default_options = {'steps': 10, 'actions': []}

    def __call__(self, **options):
        self.setCallOptions(options)
        self.checkOptions()
        self.getActions()
        for step in range(self.getOption('steps')+1):
            self.runActions(step, {'time': 0.1*step, 'energy': 1.})
        self.cleanupActions()


class TrajectoryTest(unittest.TestCase):

    def test_options(self):
        generator = Generator({'steps': 4})
        self.assertEqual(generator.getOption('steps'), 4)
        generator.setCallOptions({'steps': 6})
        self.assertEqual(generator.getOption('steps'), 6)
        self.assertRaises(ValueError, generator.getOption, 'dt')
        self.assertRaises(ValueError, Generator({'dt': 1.}))

    def test_action_ranges(self):
        every = Counter()
        window = Counter(2, 6, 2)
        tail = Counter(-3)
        Generator({})(actions=[every, window, tail])
        self.assertEqual(every.steps, list(range(11)))
        self.assertEqual(window.steps, [2, 4, 6])
        self.assertEqual(tail.steps, [7, 8, 9, 10])

    def test_log_output(self):
        stream = io.StringIO()
        Generator({'steps': 2})(actions=[LogOutput(stream, ['energy'])])
        self.assertEqual(stream.getvalue(),
                         'Step 0\nenergy: 1.0\nStep 1\nenergy: 1.0\n'
                         'Step 2\nenergy: 1.0\n')

    def test_progress(self):
        saved = ProgressOutput.pb_avail
        ProgressOutput.pb_avail = False
        try:
            stream = io.StringIO()
            action = ProgressOutput.ProgressOutput(10, skip=5, stream=stream)
            Generator({})(actions=[action])
        finally:
            ProgressOutput.pb_avail = saved
        self.assertEqual(stream.getvalue(), '\r0%\r50%\r100%\n')

    def test_trace(self):
        stream = io.StringIO()
        writeTrace(stream, ['series', 'x', 'y'], [('a', 1, 2.5),
                                                  ('b', 0.1, -1)])
        self.assertEqual(stream.getvalue(),
                         'series,x,y\na,1.0,2.5\nb,0.1,-1.0\n')

    def test_geodesic_path(self):
        states = N.array([[0., 1., 0., 0., 0., 1.],
                          [0.5, 1., 0., 0., 0., 1.]])
        path = GeodesicPath([0., 1.], states, N.zeros((2, 6)), [2., 2.002],
                            2, 1)
        self.assertEqual(len(path), 2)
        self.assertAlmostEqual(path.energyDrift(), 1.e-3, 12)
        self.assertAlmostEqual(path.endpoint().field.array[0, 0].real, 0.5,
                               15)
        stream = io.StringIO()
        path.writeCSV(stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], 't,energy,x0,x1,x2,x3,x4,x5')
        self.assertEqual(lines[2], '1.0,2.002,0.5,1.0,0.0,0.0,0.0,1.0')


class UtilityTest(unittest.TestCase):

    def test_thread_count(self):
        saved = os.environ.get('SOBOGEO_THREADS')
        try:
            os.environ['SOBOGEO_THREADS'] = '3'
            self.assertEqual(Utility.threadCount(), 3)
            os.environ['SOBOGEO_THREADS'] = '0'
            self.assertEqual(Utility.threadCount(), 1)
            os.environ['SOBOGEO_THREADS'] = 'many'
            self.assertRaises(ConfigError, Utility.threadCount)
        finally:
            if saved is None:
                del os.environ['SOBOGEO_THREADS']
            else:
                os.environ['SOBOGEO_THREADS'] = saved

    def test_helpers(self):
        self.assertTrue(Utility.isPowerOfTwo(64))
        self.assertFalse(Utility.isPowerOfTwo(48))
        self.assertFalse(Utility.isPowerOfTwo(0))
        self.assertTrue(N.allclose(Utility.grid(4),
                                   [0., N.pi/2, N.pi, 1.5*N.pi]))
        self.assertEqual(Utility.relativeResidual(2., 3.), 0.5)


def suite():
    loader = unittest.TestLoader()
    s = unittest.TestSuite()
    s.addTest(loader.loadTestsFromTestCase(FieldFileTest))
    s.addTest(loader.loadTestsFromTestCase(TrajectoryTest))
    s.addTest(loader.loadTestsFromTestCase(UtilityTest))
    return s


if __name__ == '__main__':
    unittest.main()
