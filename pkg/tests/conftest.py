import pytest

from fuzzgen import cases

FUZZ_COUNT = 1000


@pytest.fixture(scope="session")
def fuzz_cases():
    return cases(FUZZ_COUNT, seed=2024)
