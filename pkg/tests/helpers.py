from pathlib import Path

from src.corpus.datafile import write_data_file
from src.corpus.tree import Corpus
from src.index.builder import build_index
from src.index.scheme import CodingScheme

SCHEMES = tuple(CodingScheme)


class IndexFactory:
    """Builds each (data file, mss, scheme) index once per session."""

    def __init__(self, root: Path):
        self.root = root
        self._built: dict[tuple[str, int, CodingScheme], Path] = {}

    def __call__(self, data_path: Path, mss: int, scheme: CodingScheme | str) -> Path:
        scheme = CodingScheme.parse(scheme)
        key = (str(data_path), mss, scheme)
        if key not in self._built:
            path = self.root / f"{data_path.stem}-{scheme.value}-{mss}.idx"
            build_index(data_path, mss, scheme, path)
            self._built[key] = path
        return self._built[key]


def write_corpus(directory: Path, name: str, corpus: Corpus) -> Path:
    path = directory / f"{name}.dat"
    write_data_file(corpus, path)
    return path
