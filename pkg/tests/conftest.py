import pytest

import corpus


@pytest.fixture(scope="session")
def all_functions():
    return corpus.full_corpus()


@pytest.fixture(scope="session")
def harvested_pairs():
    return corpus.harvested()


@pytest.fixture(scope="session")
def integer_functions():
    return corpus.integer_corpus()


@pytest.fixture(scope="session")
def infiltration_pairs():
    return corpus.infiltration_specs()
