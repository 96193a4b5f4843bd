"""The simulated machine: w-bit cell memory, wide memory access, cost counter.

Memory is a fixed-size array of w-bit cells addressed by w-bit values. The
six wide access operations move k cells at a time between memory and a wide
word (block, word, and content flavors of read and write); content accesses
gather/scatter through per-block addresses under a CREW discipline
(concurrent reads allowed, duplicate write targets fault).

Every wide ALU operation costs one `wide_alu` unit and every wide access one
`wide_mem` unit, regardless of k: the counter prices the abstract machine,
not the host loop that simulates it. Scalar loads/stores and explicitly
ticked scalar ALU work are tallied separately.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CrewViolation, MemoryFault
from . import wideword as ww
from .wideword import FieldLayout, WideConfig, WideWord


@dataclass
class CostCounter:
    wide_alu: int = 0
    wide_mem: int = 0
    scalar_alu: int = 0
    scalar_mem: int = 0

    def snapshot(self) -> "CostCounter":
        return CostCounter(self.wide_alu, self.wide_mem, self.scalar_alu, self.scalar_mem)

    def delta(self, since: "CostCounter") -> "CostCounter":
        return CostCounter(
            self.wide_alu - since.wide_alu,
            self.wide_mem - since.wide_mem,
            self.scalar_alu - since.scalar_alu,
            self.scalar_mem - since.scalar_mem,
        )

    @property
    def total(self) -> int:
        return self.wide_alu + self.wide_mem + self.scalar_alu + self.scalar_mem

    @property
    def wide_total(self) -> int:
        return self.wide_alu + self.wide_mem

    def as_dict(self) -> dict[str, int]:
        return {
            "wide_alu": self.wide_alu,
            "wide_mem": self.wide_mem,
            "scalar_alu": self.scalar_alu,
            "scalar_mem": self.scalar_mem,
        }


class Machine:
    """A single-owner simulated machine instance.

    One logical thread drives a Machine; independent runs should each build
    their own. `strict` enables operand precondition checks on compress,
    spread, and the field operations.
    """

    def __init__(self, cfg: WideConfig, mem_size: int, strict: bool = True):
        if mem_size <= 0:
            raise ValueError("mem_size must be positive")
        if mem_size > 1 << cfg.w:
            raise ValueError("memory cannot exceed the w-bit address space")
        self.cfg = cfg
        self.mem: list[int] = [0] * mem_size
        self.size = mem_size
        self.strict = strict
        self.counter = CostCounter()
        self._alloc_ptr = 0

    # -- allocation bookkeeping (host-side convenience, no model cost) ------

    def alloc(self, cells: int) -> int:
        """Reserve a region and return its base address (bump allocator)."""
        base = self._alloc_ptr
        if base + cells > self.size:
            raise MemoryFault("alloc", base + cells)
        self._alloc_ptr = base + cells
        return base

    def cost_report(self) -> CostCounter:
        return self.counter.snapshot()

    # -- scalar operations ---------------------------------------------------

    def load(self, addr: int) -> int:
        self._check(addr, "load")
        self.counter.scalar_mem += 1
        return self.mem[addr]

    def store(self, addr: int, value: int) -> None:
        self._check(addr, "store")
        if not 0 <= value <= self.cfg.block_mask:
            raise ValueError(f"cell value {value} does not fit {self.cfg.w} bits")
        self.counter.scalar_mem += 1
        self.mem[addr] = value

    def tick_scalar(self, n: int = 1) -> None:
        """Charge n scalar ALU operations."""
        self.counter.scalar_alu += n

    def _check(self, addr: int, kind: str, block: int | None = None) -> None:
        if not 0 <= addr < self.size:
            raise MemoryFault(kind, addr, block)

    # -- wide memory access (one wide_mem unit each) -------------------------

    def read_block(self, w: WideWord, j: int, base: int) -> WideWord:
        if not 0 <= j < self.cfg.k:
            raise MemoryFault("read_block", base + j, j)
        self._check(base + j, "read_block", j)
        self.counter.wide_mem += 1
        shift = j * self.cfg.w
        value = (w.value & ~(self.cfg.block_mask << shift)) | (self.mem[base + j] << shift)
        return WideWord(self.cfg, value)

    def read_word(self, base: int) -> WideWord:
        self._check(base, "read_word")
        self._check(base + self.cfg.k - 1, "read_word")
        self.counter.wide_mem += 1
        value = 0
        w = self.cfg.w
        for j in range(self.cfg.k):
            value |= self.mem[base + j] << (j * w)
        return WideWord(self.cfg, value)

    def read_content(self, w: WideWord, base: int) -> WideWord:
        """Gather: block j becomes MEM[base + w_j]. Duplicate addresses are fine."""
        self.counter.wide_mem += 1
        value = 0
        wbits = self.cfg.w
        for j in range(self.cfg.k):
            addr = base + w.limb(j)
            self._check(addr, "read_content", j)
            value |= self.mem[addr] << (j * wbits)
        return WideWord(self.cfg, value)

    def write_block(self, w: WideWord, j: int, base: int) -> None:
        if not 0 <= j < self.cfg.k:
            raise MemoryFault("write_block", base + j, j)
        self._check(base + j, "write_block", j)
        self.counter.wide_mem += 1
        self.mem[base + j] = w.limb(j)

    def write_word(self, w: WideWord, base: int) -> None:
        self._check(base, "write_word")
        self._check(base + self.cfg.k - 1, "write_word")
        self.counter.wide_mem += 1
        for j in range(self.cfg.k):
            self.mem[base + j] = w.limb(j)

    def write_content(self, w: WideWord, v: WideWord, base: int) -> None:
        """Scatter: MEM[base + v_j] <- w_j; duplicate targets violate CREW."""
        self.counter.wide_mem += 1
        seen: dict[int, int] = {}
        for j in range(self.cfg.k):
            addr = base + v.limb(j)
            self._check(addr, "write_content", j)
            if addr in seen:
                raise CrewViolation(addr, (seen[addr], j))
            seen[addr] = j
        for j in range(self.cfg.k):
            self.mem[base + v.limb(j)] = w.limb(j)

    # -- wide ALU (one wide_alu unit each) ------------------------------------

    def _alu(self) -> None:
        self.counter.wide_alu += 1

    def w_and(self, a: WideWord, b: WideWord) -> WideWord:
        self._alu()
        return ww.wide_and(a, b)

    def w_or(self, a: WideWord, b: WideWord) -> WideWord:
        self._alu()
        return ww.wide_or(a, b)

    def w_xor(self, a: WideWord, b: WideWord) -> WideWord:
        self._alu()
        return ww.wide_xor(a, b)

    def w_not(self, a: WideWord) -> WideWord:
        self._alu()
        return ww.wide_not(a)

    def w_add(self, a: WideWord, b: WideWord) -> WideWord:
        self._alu()
        return ww.wide_add(a, b)

    def w_sub(self, a: WideWord, b: WideWord) -> WideWord:
        self._alu()
        return ww.wide_sub(a, b)

    def shift_high(self, a: WideWord, i: int) -> WideWord:
        self._alu()
        return ww.shift_to_high(a, i)

    def shift_low(self, a: WideWord, i: int) -> WideWord:
        self._alu()
        return ww.shift_to_low(a, i)

    def compress(self, a: WideWord) -> WideWord:
        self._alu()
        return ww.compress(a, strict=self.strict)

    def spread(self, a: WideWord) -> WideWord:
        self._alu()
        return ww.spread(a, strict=self.strict)

    def field_ge_mask(self, a: WideWord, b: WideWord, layout: FieldLayout) -> WideWord:
        self._alu()
        return ww.field_ge_mask(a, b, layout, strict=self.strict)

    def field_max(
        self, a: WideWord, b: WideWord, layout: FieldLayout, signed: bool = False
    ) -> WideWord:
        self._alu()
        return ww.field_max(a, b, layout, signed=signed, strict=self.strict)

    def is_nonzero(self, a: WideWord) -> bool:
        """Branch-condition test on a wide word (charged as one ALU op)."""
        self._alu()
        return a.value != 0

    # -- constants (register setup, not charged) ------------------------------

    def zero(self) -> WideWord:
        return ww.wide_zero(self.cfg)

    def const(self, value: int) -> WideWord:
        return ww.wide_from_value(self.cfg, value)

    def const_limbs(self, limbs) -> WideWord:
        return ww.wide_from_limbs(self.cfg, limbs)


def mem_read(
    kind: str, m: Machine, w: WideWord, base: int, j: int | None = None
) -> WideWord:
    """Dispatch wrapper over the three read flavors ('block'|'word'|'content')."""
    if kind == "block":
        if j is None:
            raise ValueError("block read needs a block index")
        return m.read_block(w, j, base)
    if kind == "word":
        return m.read_word(base)
    if kind == "content":
        return m.read_content(w, base)
    raise ValueError(f"unknown read kind {kind!r}")


def mem_write(
    kind: str,
    m: Machine,
    w: WideWord,
    base: int,
    j: int | None = None,
    v: WideWord | None = None,
) -> None:
    """Dispatch wrapper over the three write flavors ('block'|'word'|'content')."""
    if kind == "block":
        if j is None:
            raise ValueError("block write needs a block index")
        m.write_block(w, j, base)
    elif kind == "word":
        m.write_word(w, base)
    elif kind == "content":
        if v is None:
            raise ValueError("content write needs an address word")
        m.write_content(w, v, base)
    else:
        raise ValueError(f"unknown write kind {kind!r}")
