import warnings

import pytest

from contextuality import CoverWarning, load_example


@pytest.fixture(scope="session")
def corpus():
    """All bundled documents, parsed once."""
    from contextuality import EXAMPLE_NAMES

    return {name: load_example(name) for name in EXAMPLE_NAMES}


@pytest.fixture(scope="session")
def corpus_supports(corpus):
    return {name: doc.support_model() for name, doc in corpus.items()}


@pytest.fixture(autouse=True)
def _quiet_cover_warnings():
    """Random covers legitimately contain nested contexts; keep logs clean."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CoverWarning)
        yield
