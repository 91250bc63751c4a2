from .sandbox import *  # noqa

LOGGING['loggers']['htheorem']['handlers'] = ['null']  # noqa: F405
LOGGING['loggers']['htheorem']['propagate'] = False  # noqa: F405
