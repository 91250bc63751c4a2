default_app_config = "htheorem.apps.HTheoremConfig"

try:
    import importlib.metadata as importlib_metadata
except ImportError:
    import importlib_metadata as importlib_metadata

try:
    version = importlib_metadata.version("django-htheorem")
except importlib_metadata.PackageNotFoundError:
    version = "0+unknown"
