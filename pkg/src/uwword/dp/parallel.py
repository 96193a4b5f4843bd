"""Shared k-parallel array primitives used by the DP solvers.

The central routine is an in-place inclusive prefix combine over an array of
cells, done the two-step way: first the prefix of k subarrays of k entries
each is computed simultaneously (entry index in lockstep, one subarray per
block), then each subarray is adjusted by the closing value of its
predecessor, one subarray per step with all k entries updated at once. Both
steps cost O(count / k) wide operations.

Callers guarantee the region is padded to a whole number of k*k-cell groups
(identity-filled) and that cell values stay below 2**(w-1) so the blockwise
max comparator has test-bit headroom.
"""

from __future__ import annotations

from ..machine import Machine
from ..wideword import FieldLayout, WideWord


def _plan(m: Machine, count: int) -> tuple[int, int, int]:
    """Subarray size, group span, group count for a prefix scan of `count`.

    Subarrays of s entries, k of them per step-one group; s balances the
    two phases (s steps per group against count/s sequential carries), so
    s = min(k, ~sqrt(count)).
    """
    k = m.cfg.k
    s = k
    if count < k * k:
        s = max(1, min(k, int(count**0.5) + 1))
    span = k * s
    return s, span, (count + span - 1) // span


def padded_len(m: Machine, count: int) -> int:
    """Region size the prefix engine needs for `count` live cells."""
    if count <= 2 * m.cfg.k:
        return count
    _s, span, n_groups = _plan(m, count)
    return n_groups * span + m.cfg.k


def block_layout(m: Machine) -> FieldLayout:
    return FieldLayout(m.cfg.w, m.cfg.total_bits)


def combine_words(m: Machine, a: WideWord, b: WideWord, op: str) -> WideWord:
    if op == "add":
        return m.w_add(a, b)
    if op == "max":
        return m.field_max(a, b, block_layout(m))
    raise ValueError(f"unknown combine op {op!r}")


def prefix_combine_inplace(m: Machine, base: int, count: int, op: str = "add") -> None:
    """Inclusive prefix combine over `count` cells at `base`, in place.

    Arrays shorter than 2k are scanned sequentially (the parallel two-step
    would not beat O(count) units there anyway); longer arrays use the
    two-step scan, which dirties the pad region up to the next k*k group
    boundary (zeroed here first, so stale pad values never feed a carry).
    """
    if count <= 0:
        return
    k = m.cfg.k
    if count <= 2 * k:
        acc = 0
        for i in range(base, base + count):
            if op == "add":
                acc = acc + m.load(i)
            else:
                acc = max(acc, m.load(i))
            m.tick_scalar()
            m.store(i, acc)
        return
    s, span, n_groups = _plan(m, count)
    fill_cells(m, base + count, n_groups * span + k - count)
    ones = m.const(m.cfg.block_ones)
    ramp = m.const_limbs([i * s for i in range(k)])
    group_step = m.const_limbs([span] * k)
    addr0 = m.w_add(ramp, m.const_limbs([base] * k))
    for _g in range(n_groups):
        addr = addr0
        acc = m.zero()
        for idx in range(s):
            vals = m.read_content(addr, 0)
            acc = combine_words(m, acc, vals, op)
            m.write_content(acc, addr, 0)
            if idx + 1 < s:
                addr = m.w_add(addr, ones)
        addr0 = m.w_add(addr0, group_step)
    # fold each subarray's closing value into its successor: the carry is
    # broadcast, masked to the s blocks of the subarray, and combined by a
    # read-modify-write of the k cells from the subarray's start
    n_sub = (count + s - 1) // s
    carry_addr = m.const_limbs([base + s - 1] * k)
    step = m.const_limbs([s] * k)
    low_blocks = m.const(
        sum(m.cfg.block_mask << (j * m.cfg.w) for j in range(s))
    ) if s < k else None
    for i in range(1, n_sub):
        carry = m.read_content(carry_addr, 0)
        if low_blocks is not None:
            carry = m.w_and(carry, low_blocks)
        row = m.read_word(base + i * s)
        row = combine_words(m, row, carry, op)
        m.write_word(row, base + i * s)
        carry_addr = m.w_add(carry_addr, step)


def fill_cells(m: Machine, base: int, count: int, value: int = 0) -> None:
    """Write `value` into count cells with k-wide stores."""
    k = m.cfg.k
    word = m.const_limbs([value] * k)
    full = count // k
    for g in range(full):
        m.write_word(word, base + g * k)
    for off in range(full * k, count):
        m.store(base + off, value)


def copy_cells(m: Machine, src: int, dst: int, count: int) -> None:
    k = m.cfg.k
    full = count // k
    for g in range(full):
        m.write_word(m.read_word(src + g * k), dst + g * k)
    for off in range(full * k, count):
        m.store(dst + off, m.load(src + off))


def block_mask_word(m: Machine, bits01: WideWord) -> WideWord:
    """Expand a 0/1 value in each block into an all-ones/all-zero block mask."""
    return m.w_sub(m.shift_high(bits01, m.cfg.w), bits01)


def _ones_per_block(cfg, low_bits: int) -> int:
    """Constant with the low `low_bits` bits set in every block."""
    per = (1 << low_bits) - 1
    v = 0
    for j in range(cfg.k):
        v |= per << (j * cfg.w)
    return v
