import pytest

from keyscope.profiles import default_profile_set


@pytest.fixture(scope="session")
def profile_set():
    return default_profile_set()
