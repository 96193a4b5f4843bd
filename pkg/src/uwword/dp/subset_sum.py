"""Subset sum by row-bitmap dynamic programming, kw bits per operation.

Row bitmap C has bit j set iff some subset of the items seen so far sums to
j. Each item a folds in as C |= C * 2**a, processed one wide word at a time:
the shift is a whole-cell offset plus a residual bit shift composed from two
adjacent source words. Working top-down keeps the update in place.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import UwwordError
from ..machine import Machine
from ..wideword import WideConfig
from . import parallel


class SubsetSumEngine:
    """Stepping interface: init once, fold items, then test the target bit."""

    def __init__(self, machine: Machine, target: int):
        if target < 0:
            raise ValueError("target must be nonnegative")
        self.machine = machine
        self.target = target
        cfg = machine.cfg
        self.n_cells = -(-(target + 1) // cfg.w)
        self.n_chunks = -(-self.n_cells // cfg.k)
        # one chunk of lead-in pad absorbs partially out-of-range source reads
        region = machine.alloc(self.n_chunks * cfg.k + 2 * cfg.k)
        self.base = region + cfg.k
        parallel.fill_cells(machine, self.base, self.n_chunks * cfg.k)
        machine.store(self.base, 1)  # empty subset reaches 0

    def fold_item(self, a: int) -> None:
        """C |= C shifted up by a (bits above the target fall off)."""
        if a < 0:
            raise ValueError("weights must be nonnegative")
        m = self.machine
        m.tick_scalar()
        if a == 0 or a > self.target:
            return
        w, k = m.cfg.w, m.cfg.k
        kw = w * k
        off, r = divmod(a, w)
        for c in range(self.n_chunks - 1, -1, -1):
            if (c + 1) * kw <= a:
                break  # sources entirely below bit zero
            b_base = self.base + c * k - off
            hi = m.read_word(b_base)
            if r:
                a_base = b_base - k
                shifted = m.shift_high(hi, r)
                if a_base >= self.base - k:
                    lo = m.read_word(a_base)
                    shifted = m.w_or(shifted, m.shift_low(lo, kw - r))
            else:
                shifted = hi
            dest = self.base + c * k
            m.write_word(m.w_or(m.read_word(dest), shifted), dest)

    def result(self) -> bool:
        m = self.machine
        cell = m.load(self.base + self.target // m.cfg.w)
        m.tick_scalar()
        return bool((cell >> (self.target % m.cfg.w)) & 1)


def subset_sum(machine: Machine, weights: Sequence[int], target: int) -> bool:
    """Is some subset of `weights` summing exactly to `target`?"""
    engine = SubsetSumEngine(machine, target)
    for a in weights:
        engine.fold_item(a)
    return engine.result()


def subset_sum_solve(
    weights: Sequence[int], target: int, cfg: WideConfig | None = None
) -> tuple[bool, Machine]:
    """Convenience wrapper that sizes and owns a machine for one instance."""
    cfg = cfg or WideConfig(64, 64)
    cells = -(-(target + 1) // cfg.w)
    cells = (-(-cells // cfg.k)) * cfg.k + 2 * cfg.k + 4
    if cells > 1 << cfg.w:
        raise UwwordError("target exceeds the addressable memory budget")
    machine = Machine(cfg, cells)
    return subset_sum(machine, weights, target), machine
