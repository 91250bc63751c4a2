from django.apps import AppConfig


class HTheoremConfig(AppConfig):
    name = "htheorem"
    verbose_name = "H-theorem verification"

    def ready(self):
        from htheorem import receivers  # noqa: F401 pylint: disable=unused-import
