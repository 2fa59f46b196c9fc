from .embedding import automorphisms, embeds_at_root, is_subtree_of
from .enumeration import SubtreeInstance, enumerate_shapes, enumerate_subtrees
from .growth import subtree_growth
from .keys import (
    KEY_ITEM,
    LabelTable,
    SubtreeKey,
    decode_key,
    encode_canonical,
    encode_key,
    key_bit_bound,
    key_size,
    max_key_bytes,
    render_key,
)
from .shape import SubtreeShape, canonicalize, is_canonical, parse_shape, sort_key

__all__ = [
    "KEY_ITEM",
    "LabelTable",
    "SubtreeInstance",
    "SubtreeKey",
    "SubtreeShape",
    "automorphisms",
    "canonicalize",
    "decode_key",
    "encode_canonical",
    "embeds_at_root",
    "encode_key",
    "enumerate_shapes",
    "enumerate_subtrees",
    "is_canonical",
    "is_subtree_of",
    "key_bit_bound",
    "key_size",
    "max_key_bytes",
    "parse_shape",
    "render_key",
    "sort_key",
    "subtree_growth",
]
