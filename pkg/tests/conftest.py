import pytest
from hypothesis import settings

import textgen

settings.register_profile("ci", deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def english_1mib() -> str:
    """English-like fixture text of at least 1 MiB (UTF-8 bytes)."""
    return textgen.text_of_size(1 << 20, seed=42)


@pytest.fixture(scope="session")
def sentences_5k() -> list[str]:
    return textgen.sentences(5000, seed=7)
