"""Input generation and the on-disk sequence format.

Random inputs come from numpy's PCG64 bit generator seeded through
``SeedSequence``, so a (kind, n, seed) triple names one sequence on every
platform numpy supports. Independent streams are obtained with
:func:`spawn_seeds`.

Sequence file layout (all integers little-endian)::

    offset  size  field
    0       4     magic  b"SWSQ"
    4       1     version (1)
    5       1     symbol width in bytes (1, 2, 4 or 8)
    6       2     reserved, zero
    8       8     alphabet_size
    16      8     length
    24      ...   length symbols, each `width` bytes
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

MAGIC = b"SWSQ"
VERSION = 1
_HEADER = struct.Struct("<4sBBHQQ")
HEADER_SIZE = _HEADER.size

GEN_KINDS = ("uniform", "all_equal", "all_distinct", "planted_duplicate", "sorting_reduction")


class SeqFormatError(ValueError):
    """Malformed sequence file. ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class GenSpecError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolSeq:
    """Read-only input tape over the alphabet {1, ..., alphabet_size}."""

    data: tuple
    alphabet_size: int

    def __post_init__(self):
        data = tuple(int(s) for s in self.data)
        object.__setattr__(self, "data", data)
        if self.alphabet_size < 1:
            raise ValueError(f"alphabet_size must be positive, got {self.alphabet_size}")
        if not data:
            raise ValueError("a symbol sequence needs at least one symbol")
        if min(data) < 1 or max(data) > self.alphabet_size:
            i, s = next((i, s) for i, s in enumerate(data) if not 1 <= s <= self.alphabet_size)
            raise ValueError(f"symbol {s} at index {i} outside alphabet 1..{self.alphabet_size}")

    def __len__(self):
        return len(self.data)

    def __getitem__(self, i):
        return self.data[i]

    def __iter__(self):
        return iter(self.data)


def as_symbols(x) -> Sequence[int]:
    """Plain indexable view of an input given as SymbolSeq or any int sequence."""
    if isinstance(x, SymbolSeq):
        return x.data
    if isinstance(x, (list, tuple)):
        return x
    return list(x)


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    seed: int = 0
    symbol: int = 1
    positions: tuple = ()
    payload: tuple = field(default=())

    def validate(self) -> None:
        if self.kind not in GEN_KINDS:
            raise GenSpecError(f"unknown generator kind {self.kind!r}; expected one of {GEN_KINDS}")
        if self.n < 1:
            raise GenSpecError(f"window length n must be >= 1, got {self.n}")
        if self.kind == "all_equal" and self.symbol < 1:
            raise GenSpecError(f"symbol must be >= 1, got {self.symbol}")
        if self.kind == "planted_duplicate":
            if len(self.positions) != 2:
                raise GenSpecError("planted_duplicate needs exactly two positions")
            p, q = self.positions
            if p == q or not (0 <= p < 2 * self.n - 1 and 0 <= q < 2 * self.n - 1):
                raise GenSpecError(
                    f"planted positions {self.positions} must be distinct and in [0, {2 * self.n - 2}]"
                )
        if self.kind == "sorting_reduction":
            t = len(self.payload)
            if not 1 <= t <= self.n - 1:
                raise GenSpecError(f"payload length {t} must be in [1, {self.n - 1}]")
            for i, v in enumerate(self.payload):
                if not 2 <= v <= self.n - 1:
                    raise GenSpecError(
                        f"payload value {v} at index {i} outside {{2, ..., {self.n - 1}}}"
                    )


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def spawn_seeds(seed: int, count: int) -> list[int]:
    """Independent 64-bit child seeds derived from one parent seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def generate(spec: GenSpec) -> SymbolSeq:
    """Build the length-(2n-1) input described by ``spec``."""
    spec.validate()
    n = spec.n
    length = 2 * n - 1
    kind = spec.kind
    if kind == "uniform":
        data = make_rng(spec.seed).integers(1, n + 1, size=length).tolist()
        return SymbolSeq(tuple(data), n)
    if kind == "all_equal":
        return SymbolSeq((spec.symbol,) * length, max(spec.symbol, n))
    if kind == "all_distinct":
        data = (make_rng(spec.seed).permutation(length) + 1).tolist()
        return SymbolSeq(tuple(data), length)
    if kind == "planted_duplicate":
        p, q = spec.positions
        fill = (make_rng(spec.seed).permutation(length - 1) + 1).tolist()
        data = []
        it = iter(fill)
        for i in range(length):
            data.append(None if i == q else next(it))
        data[q] = data[p]
        return SymbolSeq(tuple(data), max(length - 1, 1))
    # sorting_reduction: n-t copies of n, the payload, then n-1 ones
    payload = tuple(spec.payload)
    t = len(payload)
    data = (n,) * (n - t) + payload + (1,) * (n - 1)
    return SymbolSeq(data, n)


def random_seq(length: int, alphabet_size: int, rng: np.random.Generator) -> SymbolSeq:
    return SymbolSeq(tuple(rng.integers(1, alphabet_size + 1, size=length).tolist()), alphabet_size)


def _width_for(alphabet_size: int) -> int:
    for width in (1, 2, 4):
        if alphabet_size < 1 << (8 * width):
            return width
    return 8


def save_seq(s: SymbolSeq, path) -> None:
    width = _width_for(s.alphabet_size)
    header = _HEADER.pack(MAGIC, VERSION, width, 0, s.alphabet_size, len(s))
    body = np.asarray(s.data, dtype=np.dtype(f"<u{width}")).tobytes()
    Path(path).write_bytes(header + body)


def load_seq(path) -> SymbolSeq:
    raw = Path(path).read_bytes()
    if len(raw) < HEADER_SIZE:
        raise SeqFormatError("missing header", len(raw))
    magic, version, width, _reserved, alphabet_size, length = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise SeqFormatError(f"bad magic {magic!r}", 0)
    if version != VERSION:
        raise SeqFormatError(f"unsupported version {version}", 4)
    if width not in (1, 2, 4, 8):
        raise SeqFormatError(f"bad symbol width {width}", 5)
    if alphabet_size < 1:
        raise SeqFormatError("alphabet_size must be positive", 8)
    if length < 1:
        raise SeqFormatError("empty sequence", 16)
    expected = HEADER_SIZE + width * length
    if len(raw) != expected:
        raise SeqFormatError(
            f"body holds {len(raw) - HEADER_SIZE} bytes, header promises {width * length}",
            min(len(raw), expected),
        )
    data = np.frombuffer(raw, dtype=np.dtype(f"<u{width}"), offset=HEADER_SIZE)
    bad = np.flatnonzero((data < 1) | (data > alphabet_size))
    if bad.size:
        i = int(bad[0])
        raise SeqFormatError(
            f"symbol {int(data[i])} at record {i} outside alphabet 1..{alphabet_size}",
            HEADER_SIZE + i * width,
        )
    return SymbolSeq(tuple(data.tolist()), int(alphabet_size))
