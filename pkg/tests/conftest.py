import pytest
from hypothesis import HealthCheck, settings

from fundscape.synth import generate_synthetic_corpus

import helpers

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def tiny():
    return helpers.make_tiny_corpus()


@pytest.fixture(scope="session")
def synth():
    return generate_synthetic_corpus(7)


@pytest.fixture(scope="session")
def rii_corpus():
    return helpers.make_rii_corpus()


@pytest.fixture(scope="session")
def labeled_corpus():
    return helpers.make_labeled_corpus()


@pytest.fixture(scope="session")
def marker_corpus():
    # base patent rate zeroed so the planted marker is the only route to a
    # patent outcome; half the grants carry the marker token.
    return generate_synthetic_corpus(
        21,
        grants=320,
        papers=320,
        patents=90,
        base_patent_rate=0.0,
        marker_token="quixotic",
        marker_fraction=0.5,
        marker_patent_rate=1.0,
        marker_topic="Physics",
    )
