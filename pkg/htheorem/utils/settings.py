from django.conf import settings as django_settings


def overridable(name, default):
    """
    Read ``name`` from the django settings, or return ``default``.

    The numerical modules are usable without a django project, so an
    unconfigured settings object simply yields the default.
    """
    if not django_settings.configured:
        return default
    return getattr(django_settings, name, default)
