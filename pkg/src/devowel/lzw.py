"""Dictionary coder with a bit-exact container format.

The string table starts with the 256 single-byte entries and grows by one
entry per emitted code (current match + next byte). By default the table
freezes at 2**16 entries; ``max_table_size=None`` lets it grow without
bound, the corpus-measurement mode where the raw code count is the
compressed length.

Container layout: magic ``LZW1``, the original byte length as a little-endian
u64, then the codes packed MSB-first at a variable width. The width starts at
9 bits and increments exactly when the next table index to be assigned equals
2**width, capping at 16; unbounded-mode streams whose codes outgrow 16 bits
cannot be packed.
"""

from __future__ import annotations

import struct

from .errors import ContainerFormatError, CorruptStreamError, TruncatedStreamError

MAGIC = b"LZW1"
ALPHABET_SIZE = 256
DEFAULT_TABLE_SIZE = 1 << 16
HEADER_SIZE = 12

_MIN_WIDTH = 9
_MAX_WIDTH = 16


def lzw_compress(data: bytes, *, max_table_size: int | None = DEFAULT_TABLE_SIZE) -> list[int]:
    """Greedy longest-match encoding; returns the code sequence."""
    if not data:
        return []
    limit = max_table_size if max_table_size is not None else 1 << 62
    table: dict[int, int] = {}
    get = table.get
    next_code = ALPHABET_SIZE
    codes: list[int] = []
    append = codes.append
    w = data[0]
    for b in memoryview(data)[1:]:
        key = (w << 8) | b
        c = get(key)
        if c is not None:
            w = c
        else:
            append(w)
            if next_code < limit:
                table[key] = next_code
                next_code += 1
            w = b
    append(w)
    return codes


def lzw_decompress(codes: list[int], *, max_table_size: int | None = DEFAULT_TABLE_SIZE) -> bytes:
    """Rebuild the original bytes, including the just-created-entry case."""
    if not codes:
        return b""
    limit = max_table_size if max_table_size is not None else 1 << 62
    table: list[bytes] = [bytes([i]) for i in range(ALPHABET_SIZE)]
    first = codes[0]
    if not 0 <= first < ALPHABET_SIZE:
        raise CorruptStreamError(f"code {first} at position 0 is not a literal")
    prev = table[first]
    out = [prev]
    for i in range(1, len(codes)):
        c = codes[i]
        n = len(table)
        if 0 <= c < n:
            entry = table[c]
        elif c == n and n < limit:
            # The entry being created right now: previous output + its first byte.
            entry = prev + prev[:1]
        else:
            raise CorruptStreamError(
                f"code {c} at position {i} exceeds the {n} assigned table entries"
            )
        out.append(entry)
        if n < limit:
            table.append(prev + entry[:1])
        prev = entry
    return b"".join(out)


def pack_container(codes: list[int], original_byte_length: int) -> bytes:
    """Serialize a code stream; deterministic byte-for-byte."""
    if original_byte_length < 0:
        raise ValueError("original_byte_length must be non-negative")
    out = bytearray(MAGIC)
    out += struct.pack("<Q", original_byte_length)
    width = _MIN_WIDTH
    next_assign = ALPHABET_SIZE
    acc = 0
    nbits = 0
    for i, c in enumerate(codes):
        if not 0 <= c < (1 << width):
            raise ValueError(
                f"code {c} at position {i} does not fit the current {width}-bit width"
            )
        acc = (acc << width) | c
        nbits += width
        while nbits >= 8:
            nbits -= 8
            out.append((acc >> nbits) & 0xFF)
        acc &= (1 << nbits) - 1
        if next_assign < DEFAULT_TABLE_SIZE:
            next_assign += 1
            if width < _MAX_WIDTH and next_assign == (1 << width):
                width += 1
    if nbits:
        out.append((acc << (8 - nbits)) & 0xFF)
    return bytes(out)


def unpack_container(data: bytes) -> tuple[list[int], int]:
    """Inverse of :func:`pack_container`.

    Replays the width-growth schedule and a table-length simulation to know
    how many codes the payload holds without materializing the output.
    """
    if data[:4] != MAGIC:
        raise ContainerFormatError("bad magic; not a container produced by pack_container")
    if len(data) < HEADER_SIZE:
        raise ContainerFormatError("container shorter than its 12-byte header")
    (original_byte_length,) = struct.unpack("<Q", data[4:HEADER_SIZE])

    codes: list[int] = []
    width = _MIN_WIDTH
    next_assign = ALPHABET_SIZE
    pos = HEADER_SIZE
    acc = 0
    nbits = 0
    data_len = len(data)

    # Decoder-side table lengths, enough to count output bytes per code.
    entry_len = [1] * ALPHABET_SIZE
    prev_len = 0
    produced = 0
    i = 0
    while produced < original_byte_length:
        while nbits < width:
            if pos >= data_len:
                raise TruncatedStreamError(
                    f"payload ends after {i} code(s); {produced} of "
                    f"{original_byte_length} bytes reconstructed"
                )
            acc = (acc << 8) | data[pos]
            pos += 1
            nbits += 8
        nbits -= width
        c = acc >> nbits
        acc &= (1 << nbits) - 1

        n = len(entry_len)
        if i == 0:
            if c >= ALPHABET_SIZE:
                raise CorruptStreamError(f"code {c} at position 0 is not a literal")
            elen = 1
        elif c < n:
            elen = entry_len[c]
        elif c == n and n < DEFAULT_TABLE_SIZE:
            elen = prev_len + 1
        else:
            raise CorruptStreamError(
                f"code {c} at position {i} exceeds the {n} assigned table entries"
            )
        if i >= 1 and n < DEFAULT_TABLE_SIZE:
            entry_len.append(prev_len + 1)
        prev_len = elen
        produced += elen
        codes.append(c)
        i += 1

        if next_assign < DEFAULT_TABLE_SIZE:
            next_assign += 1
            if width < _MAX_WIDTH and next_assign == (1 << width):
                width += 1

    if produced != original_byte_length:
        raise CorruptStreamError(
            f"payload reconstructs {produced} bytes but the header "
            f"declares {original_byte_length}"
        )
    return codes, original_byte_length
