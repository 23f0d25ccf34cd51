from functools import lru_cache

import pytest

from alphatriples.corpus import CorpusSpec, enumerate_regular


@lru_cache(maxsize=None)
def regular_corpus(r: int, n_min: int, n_max: int, connected: bool = True):
    """Enumerated corpora are shared across test modules within a run."""
    return tuple(enumerate_regular(CorpusSpec(r, n_min, n_max, connected)))


@pytest.fixture(scope="session")
def corpus():
    return regular_corpus


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num])
