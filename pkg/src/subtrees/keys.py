"""Index keys: byte strings over interned label ids.

A key is the canonical pre-order sequence of ``(subtree size, label id)``
pairs, each packed as ``>BI``. Label ids are positions in the sorted label
alphabet.
"""

import struct
from collections.abc import Iterable

from src.subtrees.shape import SubtreeShape, canonicalize
from src.utils.errors import KeyEncodingError

SubtreeKey = bytes

KEY_ITEM = struct.Struct(">BI")


class LabelTable:
    """Sorted label alphabet with label <-> id lookups."""

    def __init__(self, labels: Iterable[str]):
        self.labels: tuple[str, ...] = tuple(sorted(set(labels)))
        self._ids = {label: i for i, label in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._ids

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LabelTable) and other.labels == self.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def id_of(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            raise KeyEncodingError(f"label {label!r} is not in the alphabet") from None

    def label_of(self, label_id: int) -> str:
        if not 0 <= label_id < len(self.labels):
            raise KeyEncodingError(f"label id {label_id} is not in the alphabet")
        return self.labels[label_id]


def encode_key(shape: SubtreeShape, labels: LabelTable, mss: int | None = None) -> SubtreeKey:
    """Serialize ``shape`` (canonicalized first) into its key bytes.

    Raises:
        KeyEncodingError: a label outside ``labels`` or a shape larger than ``mss``.
    """
    if mss is not None and shape.size > mss:
        raise KeyEncodingError(f"shape {shape} has {shape.size} nodes, more than mss={mss}")
    if shape.size > 255:
        raise KeyEncodingError(f"shape {shape} is too large for a key")
    canonical = canonicalize(shape)
    return b"".join(KEY_ITEM.pack(node.size, labels.id_of(node.label)) for node in canonical.preorder())


def encode_canonical(shape: SubtreeShape, labels: LabelTable) -> SubtreeKey:
    """``encode_key`` for shapes already known to be canonical."""
    return b"".join(KEY_ITEM.pack(node.size, labels.id_of(node.label)) for node in shape.preorder())


def decode_key(key: SubtreeKey, labels: LabelTable) -> SubtreeShape:
    """Rebuild the canonical shape stored in ``key``.

    Raises:
        KeyEncodingError: truncated bytes, inconsistent sizes or unknown ids.
    """
    if not key or len(key) % KEY_ITEM.size:
        raise KeyEncodingError(f"key of {len(key)} bytes is not a sequence of {KEY_ITEM.size}-byte items")
    items = list(KEY_ITEM.iter_unpack(key))

    def _build(pos: int) -> SubtreeShape:
        size, label_id = items[pos]
        end = pos + size
        if size < 1 or end > len(items):
            raise KeyEncodingError(f"inconsistent subtree size {size} at position {pos}")
        children: list[SubtreeShape] = []
        child = pos + 1
        while child < end:
            built = _build(child)
            children.append(built)
            child += built.size
        if child != end:
            raise KeyEncodingError(f"children overrun subtree at position {pos}")
        return SubtreeShape(labels.label_of(label_id), tuple(children))

    shape = _build(0)
    if shape.size != len(items):
        raise KeyEncodingError("trailing items after the root subtree")
    return shape


def key_size(key: SubtreeKey) -> int:
    """Number of nodes of the shape stored in ``key``."""
    return len(key) // KEY_ITEM.size


def key_bit_bound(mss: int, alphabet_size: int) -> int:
    """Reference bits for a key of ``mss`` nodes: mss * (ceil(log2(mss+1)) + ceil(log2 |alphabet|))."""
    return mss * (mss.bit_length() + max(alphabet_size - 1, 0).bit_length())


def max_key_bytes(mss: int) -> int:
    return mss * KEY_ITEM.size


def render_key(key: SubtreeKey, labels: LabelTable) -> str:
    return decode_key(key, labels).render()

