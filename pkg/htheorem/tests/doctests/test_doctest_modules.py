import doctest

import htheorem.numkernel
import htheorem.reports
import htheorem.utils.digest


def load_tests(loader, tests, ignore):  # pylint: disable=W0613
    tests.addTests(
        [
            doctest.DocTestSuite(htheorem.numkernel),
            doctest.DocTestSuite(htheorem.reports),
            doctest.DocTestSuite(htheorem.utils.digest),
        ]
    )
    return tests
