import os
from importlib import reload as reload_module

import numpy as np
from django.test import SimpleTestCase

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(__file__)), "fixtures", "specs")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


class HTheoremTestCase(SimpleTestCase):
    longMessage = True

    @staticmethod
    def reload_modules(modules=()):
        for module in modules:
            reload_module(module)

    def assertAllClose(self, actual, expected, atol=1e-10, message=""):
        actual = np.asarray(actual)
        expected = np.asarray(expected)
        if actual.shape != expected.shape:
            self.fail("shape %s != %s. %s" % (actual.shape, expected.shape, message))
        worst = float(np.max(np.abs(actual - expected))) if actual.size else 0.0
        if worst > atol:
            self.fail(
                "arrays differ by %g (tolerance %g). %s" % (worst, atol, message)
            )

    def assertSmall(self, value, bound, message=""):
        if value is None or not value <= bound:
            self.fail("%r is not below %g. %s" % (value, bound, message))
