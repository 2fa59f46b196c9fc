from pathlib import Path

import pytest
from loguru import logger

from src.corpus.tree import Corpus
from src.models.records import GeneratorConfig
from src.testkit.generator import gen_corpus
from tests.helpers import IndexFactory, write_corpus


@pytest.fixture(scope="session")
def synthetic_corpus() -> Corpus:
    logger.info("Generating the 100-tree synthetic corpus...")
    return gen_corpus(GeneratorConfig(seed=7, tree_count=100))


@pytest.fixture(scope="session")
def synthetic_data(tmp_path_factory, synthetic_corpus) -> Path:
    return write_corpus(tmp_path_factory.mktemp("synthetic"), "synthetic", synthetic_corpus)


@pytest.fixture(scope="session")
def index_factory(tmp_path_factory) -> IndexFactory:
    return IndexFactory(tmp_path_factory.mktemp("indexes"))
