from dataclasses import dataclass, field
from enum import StrEnum
from typing import NamedTuple


class EdgeType(StrEnum):
    CHILD = "/"
    DESCENDANT = "//"


@dataclass(frozen=True, slots=True)
class QueryNode:
    """A node of an unordered tree pattern; each child carries the axis linking it here."""

    label: str
    children: tuple[tuple[EdgeType, "QueryNode"], ...] = ()
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", 1 + sum(child.size for _, child in self.children))

    def render(self) -> str:
        """Text form accepted by ``parse_query``: ``A(B)(//C)``."""
        parts = [self.label]
        for axis, child in self.children:
            prefix = "//" if axis is EdgeType.DESCENDANT else ""
            parts.append(f"({prefix}{child.render()})")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    @property
    def has_descendant_edges(self) -> bool:
        return any(axis is EdgeType.DESCENDANT or child.has_descendant_edges for axis, child in self.children)


def query_size(q: QueryNode) -> int:
    """Number of query nodes."""
    return q.size


class MatchBinding(NamedTuple):
    """A query-root binding: the tree and the interval numbers of the bound node."""

    tid: int
    pre: int
    post: int
    level: int

    def line(self) -> str:
        return f"{self.tid}\t{self.pre}\t{self.post}\t{self.level}"
