"""On-disk layout of an index file (little-endian).

::

    header      <8sHBBHIIQQQ  magic b"SUBTRIDX", version, scheme tag, mss,
                              entries per page, key count, label count,
                              directory offset, page count, total postings
    labels      label table (same encoding as the data file)
    postings    one varint-coded list per key, in key order
    directory   pages of <B30sQII entries (key length, key, posting offset,
                posting bytes, posting count), each page followed by <I CRC-32
"""

import struct

MAGIC = b"SUBTRIDX"
VERSION = 1

HEADER = struct.Struct("<8sHBBHIIQQQ")
ENTRY = struct.Struct("<B30sQII")
PAGE_CRC = struct.Struct("<I")

MAX_KEY_BYTES = 30


def page_bytes(entries: int) -> int:
    """Size of a directory page holding ``entries`` entries."""
    return entries * ENTRY.size + PAGE_CRC.size
