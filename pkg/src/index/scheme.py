from enum import StrEnum

from src.utils.errors import IndexFormatError


class CodingScheme(StrEnum):
    """How postings record the structure of each subtree instance."""

    FILTER_BASED = "filter-based"
    SUBTREE_INTERVAL = "subtree-interval"
    ROOT_SPLIT = "root-split"

    @property
    def tag(self) -> int:
        """Byte stored in the index header."""
        return _TAGS[self]

    @classmethod
    def from_tag(cls, tag: int) -> "CodingScheme":
        for scheme, value in _TAGS.items():
            if value == tag:
                return scheme
        raise IndexFormatError(f"unknown coding scheme tag {tag}")

    @classmethod
    def parse(cls, name: "str | CodingScheme") -> "CodingScheme":
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown coding scheme {name!r} (expected one of {choices})") from None


_TAGS = {
    CodingScheme.FILTER_BASED: 1,
    CodingScheme.SUBTREE_INTERVAL: 2,
    CodingScheme.ROOT_SPLIT: 3,
}
