"""Static prefix sums of a bit sequence: block counts plus a parallel scan.

The sequence is packed into blocks (one block per cell, block width
configurable, default w). An array A holds the ones-count of every block,
computed k blocks at a time with sub-key popcount table gathers; A' is the
inclusive prefix of A via the two-step parallel scan. A query
prefix_ones(q) is then an in-block partial count plus A'[block-1].
"""

from __future__ import annotations

from typing import Sequence

from ..errors import MemoryFault
from ..machine import Machine
from . import parallel

_POPCOUNT_KEY_BITS = 8


def _popcount_table(m: Machine, key_bits: int) -> int:
    """Base address of a 2**key_bits popcount table, installed once."""
    cache = getattr(m, "_popcount_tables", None)
    if cache is None:
        cache = {}
        m._popcount_tables = cache  # type: ignore[attr-defined]
    if key_bits not in cache:
        base = m.alloc(1 << key_bits)
        for v in range(1 << key_bits):
            m.mem[base + v] = v.bit_count()
        cache[key_bits] = base
    return cache[key_bits]


class PrefixSumIndex:
    """Rank-in-O(1) structure over a fixed bit sequence."""

    def __init__(self, machine: Machine, bits: Sequence[int], block_bits: int | None = None):
        bb = block_bits or machine.cfg.w
        if not 1 <= bb <= machine.cfg.w:
            raise ValueError("block width must be in [1, w]")
        self.machine = machine
        self.block_bits = bb
        self.length = len(bits)
        self.key_bits = max(1, min(bb, machine.cfg.w // 2, _POPCOUNT_KEY_BITS))
        self._table = _popcount_table(machine, self.key_bits)
        n_blocks = max(1, -(-self.length // bb))
        self.n_blocks = n_blocks
        k = machine.cfg.k
        self._bits_base = machine.alloc(((n_blocks + k - 1) // k) * k)
        # input packing is setup, not algorithm work
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError("bit sequence entries must be 0 or 1")
            if b:
                machine.mem[self._bits_base + i // bb] |= 1 << (i % bb)
        self._counts_base = machine.alloc(parallel.padded_len(machine, n_blocks))
        self._prefix_base = machine.alloc(parallel.padded_len(machine, n_blocks))
        self._build()

    def _build(self) -> None:
        m = self.machine
        k = m.cfg.k
        rounds = -(-self.block_bits // self.key_bits)
        low_keys = m.const(parallel._ones_per_block(m.cfg, self.key_bits))
        table_off = m.const_limbs([self._table] * k)
        for g in range(0, self.n_blocks, k):
            w = m.read_word(self._bits_base + g)
            acc = m.zero()
            for r in range(rounds):
                key = m.w_and(w, low_keys)
                acc = m.w_add(acc, m.read_content(m.w_add(key, table_off), 0))
                if r + 1 < rounds:
                    w = m.shift_low(w, self.key_bits)
            m.write_word(acc, self._counts_base + g)
        parallel.copy_cells(m, self._counts_base, self._prefix_base, self.n_blocks)
        parallel.prefix_combine_inplace(m, self._prefix_base, self.n_blocks, "add")

    def prefix_ones(self, q: int) -> int:
        """Number of set bits among positions 0..q inclusive."""
        if not 0 <= q < self.length:
            raise MemoryFault("prefix_ones query", q)
        m = self.machine
        bb = self.block_bits
        blk, off = divmod(q, bb)
        cell = m.load(self._bits_base + blk) & ((1 << (off + 1)) - 1)
        m.tick_scalar()
        f = 0
        while True:
            f += m.load(self._table + (cell & ((1 << self.key_bits) - 1)))
            m.tick_scalar(2)
            cell >>= self.key_bits
            if not cell:
                break
        if blk:
            f += m.load(self._prefix_base + blk - 1)
            m.tick_scalar()
        return f

    # host-side views for inspection
    def block_counts(self) -> list[int]:
        return self.machine.mem[self._counts_base : self._counts_base + self.n_blocks]

    def prefix_blocks(self) -> list[int]:
        return self.machine.mem[self._prefix_base : self._prefix_base + self.n_blocks]


def static_prefix_sums(
    machine: Machine,
    bits: Sequence[int],
    q: int | None = None,
    block_bits: int | None = None,
) -> tuple[int | None, list[int], PrefixSumIndex]:
    """Build the index; returns (answer at q, block-prefix array, index)."""
    index = PrefixSumIndex(machine, bits, block_bits=block_bits)
    answer = index.prefix_ones(q) if q is not None else None
    return answer, index.prefix_blocks(), index
