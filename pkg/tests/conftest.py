import os
from pathlib import Path

from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

os.environ.setdefault("MSHOPF_CATALOG_DIR", str(Path.home() / ".cache" / "mshopf"))
