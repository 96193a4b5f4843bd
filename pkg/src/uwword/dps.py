"""Dynamic prefix sums over a fixed-size array in O(iota+1) machine units.

An array A of N values over a universe of size M supports update(j, d):
A[j] <- A[j] (+) d and retrieve(j): A[0] (+) ... (+) A[j], where (+) is an
associative operation (addition mod M and max ship with the structure).

A complete binary tree over the N leaves stores, at every internal node, the
m-bit combination of the node's left-subtree leaves. The whole leaf-to-root
path of payloads (n*m <= w bits) lives in one overlapped FS-RAM register per
leaf, so update and retrieve each touch exactly one register. An update
applies d to the path fields whose node has the leaf on the left, with
carry-safe even/odd field arithmetic on the path word. A retrieve masks the
fields whose node has the leaf on the right and folds them through lookup
tables: 2**iota chunk tables evaluated by one parallel gather, then iota
rounds of pairwise table combination, trading table space O(M**(n/2**iota))
against time O(iota+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import UwwordError
from .fsram import FsRam, FsRamLayout
from .machine import Machine
from .wideword import WideConfig


@dataclass(frozen=True)
class FoldOp:
    """Associative combining operation with identity 0."""

    name: str
    combine: Callable[[int, int], int]


def fold_op(name: str, universe: int) -> FoldOp:
    if name == "add":
        return FoldOp("add", lambda a, b: (a + b) % universe)
    if name == "max":
        return FoldOp("max", max)
    raise ValueError(f"unknown fold op {name!r} (shipped: add, max)")


class DynamicPrefixSums:
    def __init__(
        self,
        machine: Machine,
        n_items: int,
        universe: int,
        iota: int = 1,
        op: str | FoldOp = "add",
    ):
        if n_items < 2 or n_items & (n_items - 1):
            raise ValueError("array length must be a power of two >= 2")
        if universe < 2 or universe & (universe - 1):
            raise ValueError("universe size must be a power of two >= 2")
        if iota < 0:
            raise ValueError("iota must be nonnegative")
        self.machine = machine
        self.n_items = n_items
        self.universe = universe
        self.iota = iota
        self.op = fold_op(op, universe) if isinstance(op, str) else op
        self.n = (n_items - 1).bit_length()
        self.m = (universe - 1).bit_length()
        w = machine.cfg.w
        if self.n * self.m > w:
            raise UwwordError(f"path word needs n*m={self.n * self.m} <= w={w} bits")
        # chunk plan: 2**iota chunks of ceil(n / 2**iota) fields (power of two
        # count so the pairwise rounds halve cleanly; never more than needed)
        self.n_chunks = 1 << min(iota, max(self.n - 1, 0).bit_length())
        if self.n_chunks > 1 and 2 * self.m > w:
            raise UwwordError("pairwise combination keys need 2m <= w bits")
        if self.n_chunks > machine.cfg.k:
            raise UwwordError("chunk count exceeds block count k")
        self._install()

    @classmethod
    def create(
        cls,
        n_items: int,
        universe: int,
        iota: int = 1,
        op: str | FoldOp = "add",
        cfg: WideConfig | None = None,
        strict: bool = True,
    ) -> "DynamicPrefixSums":
        cfg = cfg or WideConfig(64, 64)
        n = (n_items - 1).bit_length()
        m = (universe - 1).bit_length()
        k = cfg.k
        n_chunks = 1 << min(iota, max(n - 1, 0).bit_length())
        chunk_len = -(-n // n_chunks)
        t0 = sum(universe ** min(chunk_len, n - c * chunk_len) if c * chunk_len < n else 1
                 for c in range(n_chunks))
        cells = (
            n_items * k + (n_items - 1) * m + k + 2          # FS-RAM region
            + n_items * universe + n_items                    # update/mask tables
            + t0 + universe * universe + 1                    # fold tables + zero cell
            + n_items + 2 * k + 8
        )
        return cls(Machine(cfg, cells, strict=strict), n_items, universe, iota, op)

    def _install(self) -> None:
        mch = self.machine
        n, m, nn = self.n, self.m, self.n_items
        rows = []
        for j in range(nn):
            row = []
            for h in range(n):
                node = (nn + j) >> (h + 1)
                row.extend((node - 1) * m + q for q in range(m))
            rows.append(tuple(row))
        self.tree = FsRam(mch, FsRamLayout(r=nn, b=n * m, n_bits=(nn - 1) * m, table=tuple(rows)))
        comb = self.op.combine
        # leaf values
        self._a = mch.alloc(nn)
        # update words: value d replicated into every left-side field of leaf j
        self._u_tab = mch.alloc(nn * self.universe)
        for j in range(nn):
            left = sum(1 << (h * m) for h in range(n) if (j >> h) & 1 == 0)
            for d in range(self.universe):
                mch.mem[self._u_tab + j * self.universe + d] = d * left
        # field masks of right-side heights per leaf
        self._right_tab = mch.alloc(nn)
        fmask = (1 << m) - 1
        for j in range(nn):
            mch.mem[self._right_tab + j] = sum(
                fmask << (h * m) for h in range(n) if (j >> h) & 1
            )
        # chunk fold tables, highest field combined first (earliest leaves)
        self.chunk_len = -(-n // self.n_chunks)
        self._t0_base = []
        self._t0_len = []
        t0_cells = 0
        for c in range(self.n_chunks):
            lo = c * self.chunk_len
            ln = max(0, min(n, lo + self.chunk_len) - lo)
            base = mch.alloc(max(1, self.universe**ln))
            self._t0_base.append(base)
            self._t0_len.append(ln)
            t0_cells += max(1, self.universe**ln)
            for key in range(self.universe**ln):
                acc = 0
                for q in range(ln - 1, -1, -1):
                    acc = comb(acc, (key >> (q * m)) & fmask)
                mch.mem[base + key] = acc
        self._t_pair = mch.alloc(self.universe * self.universe)
        for b in range(self.universe):
            for a in range(self.universe):
                mch.mem[self._t_pair + b * self.universe + a] = comb(b, a)
        self._zero_cell = mch.alloc(1)
        self._stage = mch.alloc(mch.cfg.k)
        self._out = mch.alloc(1)
        self.table_cells = nn * self.universe + nn + t0_cells + self.universe**2
        # SWAR masks for the even/odd field passes
        self._parity_masks = []
        self._parity_tests = []
        for parity in (0, 1):
            pm = sum(fmask << (h * m) for h in range(parity, n, 2))
            tm = sum(1 << (h * m + m) for h in range(parity, n, 2))
            self._parity_masks.append(pm)
            self._parity_tests.append(tm)
        k = mch.cfg.k
        self._t0_offsets = mch.const_limbs(
            [self._t0_base[c] if c < self.n_chunks else self._zero_cell for c in range(k)]
        )
        self._pair_offsets = []
        rounds = self.n_chunks.bit_length() - 1
        for r in range(rounds):
            step = 1 << (r + 1)
            offs = [
                self._t_pair if (j % step == 0 and j < self.n_chunks) else self._zero_cell
                for j in range(k)
            ]
            self._pair_offsets.append(mch.const_limbs(offs))
        self._round_masks = [
            mch.const(sum(mch.cfg.block_mask << (j * mch.cfg.w)
                          for j in range(0, k, 1 << (r + 1))))
            for r in range(rounds)
        ]

    # -- operations ---------------------------------------------------------

    def update(self, j: int, d: int) -> None:
        """A[j] <- A[j] (+) d, refreshing every path payload above the leaf."""
        self._check(j)
        if not 0 <= d < self.universe:
            raise ValueError(f"value {d} outside universe [0, {self.universe})")
        mch = self.machine
        mch.tick_scalar()
        mch.store(self._a + j, self.op.combine(mch.load(self._a + j), d))
        path = self.tree.read(j)
        u = mch.load(self._u_tab + j * self.universe + d)
        path = self._apply_fieldwise(path, u)
        self.tree.write(j, path)

    def retrieve(self, j: int) -> int:
        """A[0] (+) ... (+) A[j]."""
        self._check(j)
        mch = self.machine
        path = self.tree.read(j)
        masked = path & mch.load(self._right_tab + j)
        mch.tick_scalar()
        # stage chunk keys into blocks and fold through the tables
        kw = self.chunk_len * self.m
        for c in range(self.n_chunks):
            key = (masked >> (c * kw)) & ((1 << (self._t0_len[c] * self.m)) - 1)
            mch.tick_scalar(2)
            mch.store(self._stage + c, key)
        w = mch.read_word(self._stage)
        v = mch.read_content(mch.w_add(w, self._t0_offsets), 0)
        rounds = self.n_chunks.bit_length() - 1
        for r in range(rounds):
            stride = 1 << r
            part = self._round_masks[r]
            a = mch.w_and(v, part)
            b = mch.w_and(mch.shift_low(v, stride * mch.cfg.w), part)
            key = mch.w_or(mch.shift_high(b, self.m), a)
            v = mch.read_content(mch.w_add(key, self._pair_offsets[r]), 0)
        mch.write_block(v, 0, self._out)
        mch.tick_scalar()
        return self.op.combine(mch.load(self._out), mch.load(self._a + j))

    def _check(self, j: int) -> None:
        if not 0 <= j < self.n_items:
            raise UwwordError(f"index {j} out of range [0, {self.n_items})")

    def _apply_fieldwise(self, path: int, u: int) -> int:
        """path_h (+) u_h per m-bit field, via carry-safe even/odd passes."""
        mch = self.machine
        out = 0
        if self.op.name == "add":
            for parity in (0, 1):
                pm = self._parity_masks[parity]
                out |= ((path & pm) + (u & pm)) & pm
            mch.tick_scalar(8)
            return out
        if self.op.name == "max":
            for parity in (0, 1):
                pm = self._parity_masks[parity]
                tm = self._parity_tests[parity]
                pp, up = path & pm, u & pm
                h = ((pp | tm) - up) & tm
                sel = h - (h >> self.m)
                out |= (pp & sel) | (up & ~sel & pm)
            mch.tick_scalar(16)
            return out
        # generic fallback: per-field host combine (documented as O(n) scalar)
        fmask = (1 << self.m) - 1
        for h in range(self.n):
            a = (path >> (h * self.m)) & fmask
            b = (u >> (h * self.m)) & fmask
            out |= self.op.combine(a, b) << (h * self.m)
        mch.tick_scalar(3 * self.n)
        return out


def dps_update(p: DynamicPrefixSums, j: int, d: int) -> None:
    p.update(j, d)


def dps_retrieve(p: DynamicPrefixSums, j: int) -> int:
    return p.retrieve(j)
