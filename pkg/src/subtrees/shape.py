from collections.abc import Iterator
from dataclasses import dataclass, field

import pyparsing as pp

from src.utils.errors import KeyEncodingError


@dataclass(frozen=True, slots=True)
class SubtreeShape:
    """An unordered labeled tree, printed as ``A(B)(C(D))``.

    Equality is structural on the stored child order; call ``canonicalize``
    first when sibling order should not matter.
    """

    label: str
    children: tuple["SubtreeShape", ...] = ()
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "size", 1 + sum(c.size for c in self.children))

    def render(self) -> str:
        return self.label + "".join(f"({c.render()})" for c in self.children)

    def __str__(self) -> str:
        return self.render()

    def preorder(self) -> Iterator["SubtreeShape"]:
        """Every node of the shape in pre order (children in stored order)."""
        stack: list[SubtreeShape] = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def labels(self) -> list[str]:
        return [n.label for n in self.preorder()]

    def parent_positions(self) -> list[int]:
        """Pre-order position of each node's parent (-1 for the root)."""
        parents: list[int] = []

        def _walk(node: SubtreeShape, parent: int) -> None:
            me = len(parents)
            parents.append(parent)
            for child in node.children:
                _walk(child, me)

        _walk(self, -1)
        return parents


def sort_key(shape: SubtreeShape) -> tuple[str, str]:
    """Sibling order used by canonical shapes: label, then full rendering."""
    return (shape.label, shape.render())


def canonicalize(shape: SubtreeShape) -> SubtreeShape:
    """Sort children at every level by ``sort_key``; idempotent."""
    children = sorted((canonicalize(c) for c in shape.children), key=sort_key)
    return SubtreeShape(shape.label, tuple(children))


def is_canonical(shape: SubtreeShape) -> bool:
    return canonicalize(shape) == shape


_LPAR, _RPAR = map(pp.Suppress, "()")
_label = pp.Regex(r"[^\s()/]+(?:/[^\s()/]+)*")
_shape = pp.Forward()
_shape <<= pp.Group(_label + pp.ZeroOrMore(_LPAR + _shape + _RPAR))


def _build(parsed: list[object]) -> SubtreeShape:
    label = parsed[0]
    assert isinstance(label, str)
    return SubtreeShape(label, tuple(_build(p) for p in parsed[1:] if isinstance(p, list)))


def parse_shape(text: str) -> SubtreeShape:
    """Parse the ``A(B)(C)`` form into a canonical shape.

    Raises:
        KeyEncodingError: the text is not a shape.
    """
    try:
        parsed = _shape.parse_string(text.strip(), parse_all=True)
    except pp.ParseBaseException as e:
        raise KeyEncodingError(f"not a subtree shape: {text!r} ({e.msg} at {e.loc})") from e
    return canonicalize(_build(parsed.as_list()[0]))
