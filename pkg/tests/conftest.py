import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CORPUS = os.path.join(os.path.dirname(__file__), "..", "corpus")


@pytest.fixture
def corpus():
    def path(name):
        return os.path.join(CORPUS, name)
    return path


@pytest.fixture
def corpus_text(corpus):
    def read(name):
        with open(corpus(name)) as fh:
            return fh.read()
    return read
