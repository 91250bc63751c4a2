"""
Standalone ``htheorem`` console script.

Inside a Django project the same commands are available through
``manage.py analyze|sweep|demo``; the console script configures a minimal
settings object when none is configured.
"""
import sys

import django
from django.conf import settings as django_settings
from django.core.management import execute_from_command_line

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3

COMMANDS = ("analyze", "sweep", "demo")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {"format": "%(levelname)s %(asctime)s %(module)s %(message)s"}
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        }
    },
    "loggers": {"htheorem": {"handlers": ["console"], "level": "WARNING"}},
}


def configure():
    if not django_settings.configured:
        django_settings.configure(
            INSTALLED_APPS=["rest_framework", "htheorem"],
            LOGGING=LOGGING,
            USE_I18N=True,
        )
    django.setup()


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write("usage: htheorem {%s} [options]\n" % "|".join(COMMANDS))
        return EXIT_INVALID

    configure()
    try:
        execute_from_command_line(["htheorem"] + list(argv))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_INVALID
    return EXIT_OK
