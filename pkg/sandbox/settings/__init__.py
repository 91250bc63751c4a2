from .sandbox import *  # noqa
