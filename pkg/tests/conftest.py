import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("wittlab", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("wittlab")


@pytest.fixture(autouse=True, scope="session")
def _cache_dir(tmp_path_factory):
    # keep the universal-polynomial cache out of the user's home
    path = tmp_path_factory.mktemp("wittlab-cache")
    old = os.environ.get("WITTLAB_CACHE_DIR")
    os.environ["WITTLAB_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("WITTLAB_CACHE_DIR", None)
    else:
        os.environ["WITTLAB_CACHE_DIR"] = old
