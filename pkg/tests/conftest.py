from pathlib import Path

import pytest

from rbmsumm import RawDocument, preprocess

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def article_text() -> str:
    return (DATA_DIR / "article_market.txt").read_text("utf-8")


@pytest.fixture(scope="session")
def article_raw(article_text) -> RawDocument:
    return RawDocument(text=article_text, source_id="article_market")


@pytest.fixture(scope="session")
def article_doc(article_raw):
    return preprocess(article_raw)


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return DATA_DIR / "corpus"
