"""Adaptive order-0 arithmetic coder over bytes plus an end-of-stream symbol.

A 32-bit integer range coder with pending-bit underflow handling. The model
tracks 257 symbols (256 byte values and the terminator), every count starts
at 1, and the coded symbol's count grows by 32 afterwards; totals are kept
below 2**30 by halving all counts (rounded up, so none drops to 0). The
stream is self-delimiting: decoding stops at the terminator.
"""

from __future__ import annotations

from .errors import TruncatedStreamError

NUM_SYMBOLS = 257
EOS = 256
INCREMENT = 32
MAX_TOTAL = 1 << 30

_STATE_BITS = 32
_FULL = (1 << _STATE_BITS) - 1
_HALF = 1 << (_STATE_BITS - 1)
_QUARTER = 1 << (_STATE_BITS - 2)
_THREE_QUARTERS = _HALF + _QUARTER

# Zero bits a decoder may legitimately read past the input: the 32-bit
# register fill on tiny streams plus renormalization lookahead.
_PHANTOM_LIMIT = 64


class FrequencyModel:
    """Adaptive symbol counts; encoder and decoder update in lockstep.

    Cumulative sums live in a Fenwick tree so lookups, updates, and the
    decoder's inverse search all cost O(log 257) native-int operations.
    """

    __slots__ = ("_counts", "_tree", "_total")

    def __init__(self) -> None:
        self._counts = [1] * NUM_SYMBOLS
        self._total = NUM_SYMBOLS
        self._tree = self._build(self._counts)

    @staticmethod
    def _build(counts: list[int]) -> list[int]:
        n = len(counts)
        tree = [0] * (n + 1)
        for i in range(1, n + 1):
            tree[i] += counts[i - 1]
            j = i + (i & -i)
            if j <= n:
                tree[j] += tree[i]
        return tree

    @property
    def total(self) -> int:
        return self._total

    def counts(self) -> list[int]:
        return list(self._counts)

    def prefix(self, symbol: int) -> int:
        """Sum of counts of all symbols below ``symbol``."""
        s = 0
        i = symbol
        tree = self._tree
        while i > 0:
            s += tree[i]
            i &= i - 1
        return s

    def interval(self, symbol: int) -> tuple[int, int, int]:
        clow = self.prefix(symbol)
        return clow, clow + self._counts[symbol], self._total

    def find(self, scaled_value: int) -> int:
        """Largest symbol whose cumulative start is <= scaled_value."""
        i = 0
        rem = scaled_value
        mask = 256
        tree = self._tree
        while mask:
            j = i + mask
            if j <= NUM_SYMBOLS and tree[j] <= rem:
                i = j
                rem -= tree[j]
            mask >>= 1
        return i

    def update(self, symbol: int) -> None:
        self._counts[symbol] += INCREMENT
        self._total += INCREMENT
        i = symbol + 1
        tree = self._tree
        while i <= NUM_SYMBOLS:
            tree[i] += INCREMENT
            i += i & -i
        if self._total >= MAX_TOTAL:
            self._rescale()

    def _rescale(self) -> None:
        # Halve every count, rounding up so none drops below 1.
        self._counts = [(c + 1) >> 1 for c in self._counts]
        self._total = sum(self._counts)
        self._tree = self._build(self._counts)


class Encoder:
    """Streaming encoder; feed symbols, then call :meth:`finish` once."""

    def __init__(self, model: FrequencyModel | None = None) -> None:
        self.model = model if model is not None else FrequencyModel()
        self._low = 0
        self._high = _FULL
        self._pending = 0
        self._acc = 0
        self._nacc = 0
        self._out = bytearray()

    def encode_symbol(self, symbol: int) -> None:
        model = self.model
        tree = model._tree
        counts = model._counts
        total = model._total
        clow = 0
        i = symbol
        while i > 0:
            clow += tree[i]
            i &= i - 1
        chigh = clow + counts[symbol]

        low = self._low
        high = self._high
        rng = high - low + 1
        high = low + rng * chigh // total - 1
        low = low + rng * clow // total

        pending = self._pending
        acc = self._acc
        nacc = self._nacc
        out = self._out
        while True:
            if high < _HALF:
                bit = 0
            elif low >= _HALF:
                bit = 1
                low -= _HALF
                high -= _HALF
            elif low >= _QUARTER and high < _THREE_QUARTERS:
                pending += 1
                low = (low - _QUARTER) << 1
                high = ((high - _QUARTER) << 1) | 1
                continue
            else:
                break
            acc = (acc << 1) | bit
            nacc += 1
            if nacc == 8:
                out.append(acc)
                acc = 0
                nacc = 0
            if pending:
                inv = bit ^ 1
                while pending:
                    acc = (acc << 1) | inv
                    nacc += 1
                    if nacc == 8:
                        out.append(acc)
                        acc = 0
                        nacc = 0
                    pending -= 1
            low <<= 1
            high = (high << 1) | 1
        self._low = low
        self._high = high
        self._pending = pending
        self._acc = acc
        self._nacc = nacc

        # Model update, inlined (mirrors FrequencyModel.update).
        counts[symbol] += INCREMENT
        model._total = total + INCREMENT
        i = symbol + 1
        while i <= NUM_SYMBOLS:
            tree[i] += INCREMENT
            i += i & -i
        if model._total >= MAX_TOTAL:
            model._rescale()

    def finish(self) -> bytes:
        """Emit the disambiguation bit, flush, and return the stream."""
        self._pending += 1
        bit = 0 if self._low < _QUARTER else 1
        acc = (self._acc << 1) | bit
        nacc = self._nacc + 1
        out = self._out
        if nacc == 8:
            out.append(acc)
            acc = 0
            nacc = 0
        inv = bit ^ 1
        while self._pending:
            acc = (acc << 1) | inv
            nacc += 1
            if nacc == 8:
                out.append(acc)
                acc = 0
                nacc = 0
            self._pending -= 1
        if nacc:
            out.append((acc << (8 - nacc)) & 0xFF)
        self._acc = 0
        self._nacc = 0
        return bytes(out)


class Decoder:
    """Streaming decoder over a finished encoder output."""

    def __init__(self, data: bytes, model: FrequencyModel | None = None) -> None:
        self.model = model if model is not None else FrequencyModel()
        self._data = data
        self._pos = 0
        self._cur = 0
        self._nbits = 0
        self._phantom = 0
        self._low = 0
        self._high = _FULL
        value = 0
        for _ in range(_STATE_BITS):
            value = (value << 1) | self._next_bit()
        self._value = value

    def _next_bit(self) -> int:
        if self._nbits == 0:
            if self._pos < len(self._data):
                self._cur = self._data[self._pos]
                self._pos += 1
                self._nbits = 8
            else:
                self._phantom += 1
                if self._phantom > _PHANTOM_LIMIT:
                    raise TruncatedStreamError(
                        "compressed stream ended before the end-of-stream symbol"
                    )
                return 0
        self._nbits -= 1
        return (self._cur >> self._nbits) & 1

    def decode_symbol(self) -> int:
        model = self.model
        tree = model._tree
        counts = model._counts
        total = model._total
        low = self._low
        high = self._high
        value = self._value
        rng = high - low + 1
        scaled = ((value - low + 1) * total - 1) // rng

        # Fenwick descend; the leftover remainder yields clow for free.
        symbol = 0
        rem = scaled
        mask = 256
        while mask:
            j = symbol + mask
            if j <= NUM_SYMBOLS and tree[j] <= rem:
                symbol = j
                rem -= tree[j]
            mask >>= 1
        clow = scaled - rem
        chigh = clow + counts[symbol]

        high = low + rng * chigh // total - 1
        low = low + rng * clow // total

        data = self._data
        data_len = len(data)
        pos = self._pos
        cur = self._cur
        nbits = self._nbits
        phantom = self._phantom
        while True:
            if high < _HALF:
                pass
            elif low >= _HALF:
                low -= _HALF
                high -= _HALF
                value -= _HALF
            elif low >= _QUARTER and high < _THREE_QUARTERS:
                low -= _QUARTER
                high -= _QUARTER
                value -= _QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
            if nbits == 0:
                if pos < data_len:
                    cur = data[pos]
                    pos += 1
                    nbits = 8
                else:
                    phantom += 1
                    if phantom > _PHANTOM_LIMIT:
                        raise TruncatedStreamError(
                            "compressed stream ended before the end-of-stream symbol"
                        )
                    cur = 0
                    nbits = 1
            nbits -= 1
            value = (value << 1) | ((cur >> nbits) & 1)
        self._low = low
        self._high = high
        self._value = value
        self._pos = pos
        self._cur = cur
        self._nbits = nbits
        self._phantom = phantom

        # Model update, inlined (mirrors FrequencyModel.update).
        counts[symbol] += INCREMENT
        model._total = total + INCREMENT
        i = symbol + 1
        while i <= NUM_SYMBOLS:
            tree[i] += INCREMENT
            i += i & -i
        if model._total >= MAX_TOTAL:
            model._rescale()
        return symbol


def ac_compress(data: bytes, *, model: FrequencyModel | None = None) -> bytes:
    """Encode bytes and terminate with the end-of-stream symbol."""
    enc = Encoder(model)
    encode = enc.encode_symbol
    for b in memoryview(data):
        encode(b)
    encode(EOS)
    return enc.finish()


def ac_decompress(data: bytes, *, model: FrequencyModel | None = None) -> bytes:
    """Exact inverse of :func:`ac_compress`; stops at the terminator."""
    dec = Decoder(data, model)
    decode = dec.decode_symbol
    out = bytearray()
    append = out.append
    while True:
        s = decode()
        if s == EOS:
            return bytes(out)
        append(s)
