"""Wide-word values and the register-level primitives of the ultra-wide ALU.

A wide word is a single (k*w)-bit integer. The division into k blocks of w
bits matters only to the memory-access operations (see `machine`); the ALU
operations here treat the word as one integer, so carries and shifted bits
cross block boundaries freely.

Shift naming. This library names shifts by the direction bits move on the
significance axis: `shift_to_high` multiplies by 2**i, `shift_to_low` divides
by 2**i. Texts that draw a word with significance increasing to the right use
"left shift" for division and "right shift" for multiplication; when reading
such pseudocode, translate `>>` to `shift_to_high` and `<<` to
`shift_to_low`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConfigMismatch, PreconditionError

_VALID_W = (8, 16, 32, 64)


@dataclass(frozen=True)
class WideConfig:
    """Shape of a wide word: k blocks of w bits each."""

    w: int
    k: int

    def __post_init__(self):
        if self.w not in _VALID_W:
            raise ValueError(f"block width w must be one of {_VALID_W}, got {self.w}")
        if not 1 <= self.k <= 1024:
            raise ValueError(f"block count k must be in [1, 1024], got {self.k}")

    @property
    def total_bits(self) -> int:
        return self.w * self.k

    @property
    def word_mask(self) -> int:
        return (1 << self.total_bits) - 1

    @property
    def block_mask(self) -> int:
        return (1 << self.w) - 1

    @property
    def block_first_bits(self) -> int:
        """Mask with bit j*w set for every block j."""
        return _block_first_bits(self.w, self.k)

    @property
    def block_ones(self) -> int:
        """Mask with value 1 in every block (same bits as block_first_bits)."""
        return _block_first_bits(self.w, self.k)


@lru_cache(maxsize=None)
def _block_first_bits(w: int, k: int) -> int:
    v = 0
    for j in range(k):
        v |= 1 << (j * w)
    return v


@dataclass(frozen=True)
class WideWord:
    """Immutable (k*w)-bit value; block j is bits [j*w, (j+1)*w)."""

    cfg: WideConfig
    value: int

    def __post_init__(self):
        if not 0 <= self.value <= self.cfg.word_mask:
            raise ValueError("value does not fit the configured width")

    def limb(self, j: int) -> int:
        if not 0 <= j < self.cfg.k:
            raise IndexError(f"block index {j} out of range [0, {self.cfg.k})")
        return (self.value >> (j * self.cfg.w)) & self.cfg.block_mask

    def limbs(self) -> list[int]:
        return [self.limb(j) for j in range(self.cfg.k)]

    def bit(self, i: int) -> int:
        if not 0 <= i < self.cfg.total_bits:
            raise IndexError(f"bit index {i} out of range")
        return (self.value >> i) & 1

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"WideWord(w={self.cfg.w}, k={self.cfg.k}, value={self.value:#x})"


def wide_zero(cfg: WideConfig) -> WideWord:
    return WideWord(cfg, 0)


def wide_from_value(cfg: WideConfig, value: int) -> WideWord:
    return WideWord(cfg, value & cfg.word_mask)


def wide_from_limbs(cfg: WideConfig, limbs: Sequence[int] | Iterable[int]) -> WideWord:
    """Build a word from low-to-high block values; missing blocks are zero."""
    limbs = list(limbs)
    if len(limbs) > cfg.k:
        raise ValueError(f"{len(limbs)} limbs exceed k={cfg.k}")
    value = 0
    for j, v in enumerate(limbs):
        if not 0 <= v <= cfg.block_mask:
            raise ValueError(f"limb {j} value {v} does not fit {cfg.w} bits")
        value |= v << (j * cfg.w)
    return WideWord(cfg, value)


def _check_same_cfg(a: WideWord, b: WideWord) -> None:
    if a.cfg != b.cfg:
        raise ConfigMismatch(f"operand configs differ: {a.cfg} vs {b.cfg}")


def wide_and(a: WideWord, b: WideWord) -> WideWord:
    _check_same_cfg(a, b)
    return WideWord(a.cfg, a.value & b.value)


def wide_or(a: WideWord, b: WideWord) -> WideWord:
    _check_same_cfg(a, b)
    return WideWord(a.cfg, a.value | b.value)


def wide_xor(a: WideWord, b: WideWord) -> WideWord:
    _check_same_cfg(a, b)
    return WideWord(a.cfg, a.value ^ b.value)


def wide_not(a: WideWord) -> WideWord:
    return WideWord(a.cfg, a.value ^ a.cfg.word_mask)


def wide_add(a: WideWord, b: WideWord) -> WideWord:
    """Addition mod 2**(k*w); carries propagate across block boundaries."""
    _check_same_cfg(a, b)
    return WideWord(a.cfg, (a.value + b.value) & a.cfg.word_mask)


def wide_sub(a: WideWord, b: WideWord) -> WideWord:
    """Subtraction mod 2**(k*w) (wraps on underflow)."""
    _check_same_cfg(a, b)
    return WideWord(a.cfg, (a.value - b.value) & a.cfg.word_mask)


def shift_to_high(a: WideWord, i: int) -> WideWord:
    """Multiply by 2**i mod 2**(k*w); bits cross block boundaries."""
    if not 0 <= i <= a.cfg.total_bits:
        raise ValueError(f"shift amount {i} out of range [0, {a.cfg.total_bits}]")
    return WideWord(a.cfg, (a.value << i) & a.cfg.word_mask)


def shift_to_low(a: WideWord, i: int) -> WideWord:
    """Floor-divide by 2**i."""
    if not 0 <= i <= a.cfg.total_bits:
        raise ValueError(f"shift amount {i} out of range [0, {a.cfg.total_bits}]")
    return WideWord(a.cfg, a.value >> i)


def compress(a: WideWord, strict: bool = True) -> WideWord:
    """Gather the first bit of every block into the low k bits of the result.

    The input may only carry bits at block-first positions (bit j*w for block
    j). In strict mode any other set bit is an error; otherwise those bits are
    ignored. The result has bit j equal to block j's first bit and is zero
    elsewhere.
    """
    cfg = a.cfg
    firsts = cfg.block_first_bits
    if strict and a.value & ~firsts:
        raise PreconditionError(
            "compress operand has set bits outside block-first positions"
        )
    v = a.value & firsts
    out = 0
    for j in range(cfg.k):
        out |= ((v >> (j * cfg.w)) & 1) << j
    return WideWord(cfg, out)


def spread(a: WideWord, strict: bool = True) -> WideWord:
    """Inverse of `compress`: bit j of block 0 becomes block j's first bit.

    Only bits 0..k-1 of the operand are representable; in strict mode any set
    bit at or above min(k, w*k) -- or outside block 0 -- is an error.
    """
    cfg = a.cfg
    n_spreadable = min(cfg.k, cfg.total_bits)
    if strict and a.value >> n_spreadable:
        raise PreconditionError(
            "spread operand has set bits beyond the k spreadable positions of block 0"
        )
    v = a.value & ((1 << n_spreadable) - 1)
    out = 0
    for j in range(cfg.k):
        out |= ((v >> j) & 1) << (j * cfg.w)
    return WideWord(cfg, out)


@dataclass(frozen=True)
class FieldLayout:
    """Tiling of a wide word into f-bit fields holding (f-1)-bit payloads.

    Fields start at bit 0; bit f-1 of each field is the test (sentinel) bit
    used by the comparison routines. Bits beyond count*f are unused and every
    field operation leaves them zero.
    """

    f: int
    total_bits: int

    def __post_init__(self):
        if not 2 <= self.f <= self.total_bits:
            raise ValueError(f"field width {self.f} out of range [2, {self.total_bits}]")

    @property
    def count(self) -> int:
        return self.total_bits // self.f

    @property
    def test_bits(self) -> int:
        return _field_mask(self.f, self.count, (1 << (self.f - 1)))

    @property
    def payload_bits(self) -> int:
        return _field_mask(self.f, self.count, (1 << (self.f - 1)) - 1)

    @property
    def sign_bits(self) -> int:
        """Top payload bit of each field (two's-complement sign at width f-1)."""
        if self.f < 3:
            raise ValueError("signed payloads need f >= 3")
        return _field_mask(self.f, self.count, 1 << (self.f - 2))

    @property
    def field_lsbs(self) -> int:
        return _field_mask(self.f, self.count, 1)

    def pack(self, payloads: Sequence[int], signed: bool = False) -> int:
        """Pack payload values into fields (host-side helper for tests/setup)."""
        out = 0
        half = 1 << (self.f - 1)
        for i, p in enumerate(payloads):
            if signed:
                if not -(half // 2) <= p < half // 2:
                    raise ValueError(f"payload {p} out of signed range for f={self.f}")
                p = p & (half - 1)
            elif not 0 <= p < half:
                raise ValueError(f"payload {p} out of unsigned range for f={self.f}")
            out |= p << (i * self.f)
        return out

    def unpack(self, value: int, signed: bool = False) -> list[int]:
        half = 1 << (self.f - 1)
        out = []
        for i in range(self.count):
            p = (value >> (i * self.f)) & (half - 1)
            if signed and p >= half // 2:
                p -= half
            out.append(p)
        return out


@lru_cache(maxsize=None)
def _field_mask(f: int, count: int, per_field: int) -> int:
    v = 0
    for i in range(count):
        v |= per_field << (i * f)
    return v


def _check_field_operands(a: WideWord, b: WideWord, layout: FieldLayout, strict: bool) -> None:
    _check_same_cfg(a, b)
    if layout.total_bits != a.cfg.total_bits:
        raise ConfigMismatch("field layout width differs from operand width")
    if strict:
        used = layout.count * layout.f
        leftover = a.cfg.word_mask & ~((1 << used) - 1)
        stray = (a.value | b.value) & (layout.test_bits | leftover)
        if stray:
            raise PreconditionError(
                "field operands must have clear test bits and zero leftover high bits"
            )


def field_ge_mask(
    a: WideWord, b: WideWord, layout: FieldLayout, strict: bool = True
) -> WideWord:
    """Per-field unsigned >= comparison.

    Returns a mask whose field i has all payload bits set iff a_i >= b_i, with
    test bits and leftover high bits clear. Computed with the test-bit
    subtraction trick: set the test bits in a, subtract b, isolate test bits,
    then turn each surviving test bit into a payload mask by subtracting the
    word shifted down by f-1.
    """
    _check_field_operands(a, b, layout, strict)
    t = layout.test_bits
    h = ((a.value | t) - b.value) & t
    mask = h - (h >> (layout.f - 1))
    return WideWord(a.cfg, mask)


def field_max(
    a: WideWord,
    b: WideWord,
    layout: FieldLayout,
    signed: bool = False,
    strict: bool = True,
) -> WideWord:
    """Per-field maximum of payloads, unsigned or two's-complement signed."""
    _check_field_operands(a, b, layout, strict)
    if signed:
        s = layout.sign_bits
        ge = field_ge_mask(
            WideWord(a.cfg, a.value ^ s), WideWord(b.cfg, b.value ^ s), layout, strict=False
        ).value
    else:
        ge = field_ge_mask(a, b, layout, strict=False).value
    return WideWord(a.cfg, (a.value & ge) | (b.value & ~ge))
