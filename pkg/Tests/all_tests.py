# Run the complete test suite
#

import os, sys
import unittest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import periodic_field_tests
import circle_group_tests
import curve_space_tests
import curve_geodesic_tests
import epdiff_tests
import shooting_tests
import io_tests
import experiment_tests

def suite():
    test_suite = unittest.TestSuite()
    test_suite.addTests(periodic_field_tests.suite())
    test_suite.addTests(circle_group_tests.suite())
    test_suite.addTests(curve_space_tests.suite())
    test_suite.addTests(curve_geodesic_tests.suite())
    test_suite.addTests(epdiff_tests.suite())
    test_suite.addTests(shooting_tests.suite())
    test_suite.addTests(io_tests.suite())
    test_suite.addTests(experiment_tests.suite())
    return test_suite

if __name__ == '__main__':
    unittest.TextTestRunner(verbosity=2).run(suite())
