"""Exception hierarchy shared by every package.

Leaf classes also derive from the builtin a caller would naturally catch
(``ValueError`` for bad input, ``KeyError`` for missing ids).
"""


class SubtreeIndexError(Exception):
    """Base class for all errors raised by this project."""


class MssOutOfRangeError(SubtreeIndexError, ValueError):
    def __init__(self, mss: int, max_mss: int):
        super().__init__(f"mss={mss} is out of range (expected 1..{max_mss})")
        self.mss = mss


class BracketParseError(SubtreeIndexError, ValueError):
    """Malformed bracketed tree; ``offset`` is a byte offset into the UTF-8 input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.reason = message
        self.offset = offset


class StructuralError(SubtreeIndexError, ValueError):
    """Parent links do not describe a single rooted tree."""


class DataFileError(SubtreeIndexError):
    """Base class for data file problems."""


class UnknownTreeError(DataFileError, KeyError):
    def __init__(self, tid: int):
        super().__init__(f"tree {tid} is not stored in this data file")
        self.tid = tid

    def __str__(self) -> str:
        return str(self.args[0])


class CorruptRecordError(DataFileError, ValueError):
    """Checksum, length or magic mismatch while reading the data file."""


class TreeOrderError(DataFileError, ValueError):
    """Duplicate or decreasing tid handed to the data file writer."""


class KeyEncodingError(SubtreeIndexError, ValueError):
    """A shape cannot be turned into an index key."""


class IndexFormatError(SubtreeIndexError, ValueError):
    """The index file header or layout is not understood."""


class CorruptPageError(IndexFormatError):
    """A key directory page failed its checksum."""


class QuerySyntaxError(SubtreeIndexError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SchemeMismatchError(SubtreeIndexError, ValueError):
    """Plan, index header and caller disagree on scheme or mss."""


class MissingDataFileError(SubtreeIndexError, ValueError):
    """Filter-based execution needs the data file for its filtering phase."""


class UnsortedStreamError(SubtreeIndexError, RuntimeError):
    """A merge join input was not sorted by tree id."""


class GeneratorError(SubtreeIndexError, ValueError):
    """Generator configuration cannot produce a corpus."""


class UnsatisfiableClassError(GeneratorError):
    """No query of the requested frequency class and size exists in the corpus."""
