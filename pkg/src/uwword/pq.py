"""Bounded-universe priority queue with O(1)-operation cost on the machine.

The queue maintains a set over a universe of M = 2**m values. Per-element
presence bits, a sorted doubly-linked list, and explicit min/max live in
ordinary cells. Two Yggdrasil tag trees live in overlapped FS-RAM memory, one
bit per internal tree node:

  * nonempty tree: node bit = 1 iff the node's subtree holds an element;
  * split tree:    node bit = 1 iff both child subtrees hold elements.

Reading one FS-RAM register yields a whole leaf-to-root path of tags as a
single <= w-bit word, so "lowest nonempty ancestor" and "lowest branching
ancestor on a given side" reduce to one register read plus a least-set-bit
computation. Split nodes additionally carry two ordinary-memory fields,
max-of-left-subtree and min-of-right-subtree; inserting or deleting an
element disturbs at most one such field per side, which is what keeps every
operation constant-cost.

All counter deltas per operation are bounded by a fixed constant independent
of M (two register reads, at most two register writes, and a handful of
scalar steps).
"""

from __future__ import annotations

from .errors import UwwordError
from .fsram import FsRam, yggdrasil_layout
from .machine import Machine
from .wideword import WideConfig


def _lsb_index(v: int) -> int:
    return (v & -v).bit_length() - 1


class PriorityQueue:
    """Discrete extended priority queue: insert, delete, min, successor."""

    def __init__(self, machine: Machine, universe: int):
        if universe < 2 or universe & (universe - 1):
            raise ValueError("universe size must be a power of two >= 2")
        m = universe.bit_length() - 1
        if m > machine.cfg.w:
            raise UwwordError("path words must fit a w-bit cell")
        self.machine = machine
        self.universe = universe
        self.depth = m
        self.none = universe  # sentinel cell value for 'no element'
        layout = yggdrasil_layout(m)
        self.nonempty = FsRam(machine, layout)
        self.split = FsRam(machine, layout)
        mm = machine
        self._present = mm.alloc(universe)
        self._succ = mm.alloc(universe)
        self._pred = mm.alloc(universe)
        self._max_left = mm.alloc(universe - 1)
        self._min_right = mm.alloc(universe - 1)
        self._state = mm.alloc(3)  # min, max, count
        for x in range(universe):
            mm.mem[self._succ + x] = self.none
            mm.mem[self._pred + x] = self.none
        mm.mem[self._state] = self.none
        mm.mem[self._state + 1] = self.none

    @classmethod
    def create(
        cls, universe: int, cfg: WideConfig | None = None, strict: bool = True
    ) -> "PriorityQueue":
        """Build a queue with its own appropriately sized machine."""
        cfg = cfg or WideConfig(64, 64)
        m = universe.bit_length() - 1
        k = cfg.k
        fsram_cells = 2 * ((universe // 2) * k + (universe - 1) + (k - m) + 2)
        cells = fsram_cells + 5 * universe + 16
        return cls(Machine(cfg, cells, strict=strict), universe)

    # -- small machine-charged accessors --------------------------------------

    def _ld(self, base: int, off: int) -> int:
        return self.machine.load(base + off)

    def _st(self, base: int, off: int, v: int) -> None:
        self.machine.store(base + off, v)

    def _node_id(self, x: int, height: int) -> int:
        # heap number of x's ancestor minus one = 0-based pointer-array index
        return ((self.universe + x) >> height) - 1

    def _min(self) -> int:
        return self._ld(self._state, 0)

    def _max(self) -> int:
        return self._ld(self._state, 1)

    def _count(self) -> int:
        return self._ld(self._state, 2)

    def __len__(self) -> int:
        return self.machine.mem[self._state + 2]

    def __contains__(self, x: int) -> bool:
        return self.machine.mem[self._present + x] == 1

    # -- queries ---------------------------------------------------------------

    def min(self) -> int | None:
        v = self._min()
        return None if v == self.none else v

    def successor(self, x: int) -> int | None:
        """Smallest present element strictly greater than x."""
        self._check_elem(x)
        if self._count() == 0:
            return None
        if self._ld(self._present, x):
            s = self._ld(self._succ, x)
        else:
            _p, s = self._absent_neighbors(x)
        return None if s == self.none else s

    def _check_elem(self, x: int) -> None:
        if not 0 <= x < self.universe:
            raise ValueError(f"element {x} outside universe [0, {self.universe})")

    def _absent_neighbors(self, x: int) -> tuple[int, int]:
        """(pred, succ) of an absent x against the present set; count > 0."""
        m = self.machine
        t = x >> 1
        e_word = self.nonempty.read(t)
        s_word = self.split.read(t)
        low_mask = self.universe - 1
        from_right = x & low_mask
        from_left = ~x & low_mask
        m.tick_scalar(3)  # masks and lsb of the nonempty path
        g = _lsb_index(e_word) + 1
        if (x >> (g - 1)) & 1 == 0:
            # x hangs left of the lowest nonempty ancestor: everything in that
            # subtree is above x, so locate the predecessor side first.
            m.tick_scalar(2)
            right_splits = s_word & from_right
            if right_splits == 0:
                return self.none, self._min()
            j = _lsb_index(right_splits) + 1
            p = self._ld(self._max_left, self._node_id(x, j))
            return p, self._ld(self._succ, p)
        m.tick_scalar(2)
        left_splits = s_word & from_left
        if left_splits == 0:
            return self._max(), self.none
        j = _lsb_index(left_splits) + 1
        s = self._ld(self._min_right, self._node_id(x, j))
        return self._ld(self._pred, s), s

    # -- updates ----------------------------------------------------------------

    def insert(self, x: int) -> None:
        """Add x; inserting a present element is a no-op."""
        self._check_elem(x)
        m = self.machine
        if self._ld(self._present, x):
            return
        t = x >> 1
        all_heights = (1 << self.depth) - 1
        if self._count() == 0:
            self._st(self._present, x, 1)
            self._st(self._succ, x, self.none)
            self._st(self._pred, x, self.none)
            self._st(self._state, 0, x)
            self._st(self._state, 1, x)
            self._st(self._state, 2, 1)
            self.nonempty.write(t, all_heights)
            return
        e_word = self.nonempty.read(t)
        s_word = self.split.read(t)
        low_mask = self.universe - 1
        m.tick_scalar(3)
        g = _lsb_index(e_word) + 1
        v_star = self._node_id(x, g)
        if (x >> (g - 1)) & 1 == 0:
            right_splits = s_word & (x & low_mask)
            m.tick_scalar(2)
            if right_splits:
                j = _lsb_index(right_splits) + 1
                p = self._ld(self._max_left, self._node_id(x, j))
                s = self._ld(self._succ, p)
                # x becomes the least element on that ancestor's right side
                self._st(self._min_right, self._node_id(x, j), x)
            else:
                p, s = self.none, self._min()
            self._st(self._max_left, v_star, x)
            self._st(self._min_right, v_star, s)
        else:
            left_splits = s_word & (~x & low_mask)
            m.tick_scalar(2)
            if left_splits:
                j = _lsb_index(left_splits) + 1
                s = self._ld(self._min_right, self._node_id(x, j))
                p = self._ld(self._pred, s)
                self._st(self._max_left, self._node_id(x, j), x)
            else:
                p, s = self._max(), self.none
            self._st(self._min_right, v_star, x)
            self._st(self._max_left, v_star, p)
        self._link(x, p, s)
        self.nonempty.write(t, all_heights)
        self.split.write(t, s_word | (1 << (g - 1)))

    def delete(self, x: int) -> None:
        """Remove x; deleting an absent element is an error."""
        self._check_elem(x)
        m = self.machine
        if not self._ld(self._present, x):
            raise UwwordError(f"delete of absent element {x}")
        t = x >> 1
        p = self._ld(self._pred, x)
        s = self._ld(self._succ, x)
        s_word = self.split.read(t)
        low_mask = self.universe - 1
        m.tick_scalar(3)
        if s_word == 0:
            # no branching ancestor: x was the only element
            self.nonempty.write(t, 0)
        else:
            j0 = _lsb_index(s_word) + 1
            left_splits = s_word & (~x & low_mask)
            right_splits = s_word & (x & low_mask)
            m.tick_scalar(2)
            if left_splits:
                j = _lsb_index(left_splits) + 1
                if j != j0 and self._ld(self._max_left, self._node_id(x, j)) == x:
                    self._st(self._max_left, self._node_id(x, j), p)
            if right_splits:
                j = _lsb_index(right_splits) + 1
                if j != j0 and self._ld(self._min_right, self._node_id(x, j)) == x:
                    self._st(self._min_right, self._node_id(x, j), s)
            self.nonempty.write(t, low_mask & ~((1 << (j0 - 1)) - 1))
            self.split.write(t, s_word & ~(1 << (j0 - 1)))
        self._st(self._present, x, 0)
        self._st(self._succ, x, self.none)
        self._st(self._pred, x, self.none)
        if p == self.none:
            self._st(self._state, 0, s if s != self.none else self.none)
        else:
            self._st(self._succ, p, s)
        if s == self.none:
            self._st(self._state, 1, p if p != self.none else self.none)
        else:
            self._st(self._pred, s, p)
        self._st(self._state, 2, self._count() - 1)

    def _link(self, x: int, p: int, s: int) -> None:
        self._st(self._present, x, 1)
        self._st(self._pred, x, p)
        self._st(self._succ, x, s)
        if p == self.none:
            self._st(self._state, 0, x)
        else:
            self._st(self._succ, p, x)
        if s == self.none:
            self._st(self._state, 1, x)
        else:
            self._st(self._pred, s, x)
        self._st(self._state, 2, self._count() + 1)


def pq_modify(q: PriorityQueue, op: str, x: int) -> None:
    """Dispatch wrapper: op is 'insert' or 'delete'."""
    if op == "insert":
        q.insert(x)
    elif op == "delete":
        q.delete(x)
    else:
        raise ValueError(f"unknown modify op {op!r}")


def pq_query(q: PriorityQueue, kind: str, x: int | None = None) -> int | None:
    """Dispatch wrapper: kind is 'min' or 'successor' (which needs x)."""
    if kind == "min":
        return q.min()
    if kind == "successor":
        if x is None:
            raise ValueError("successor query needs an element")
        return q.successor(x)
    raise ValueError(f"unknown query kind {kind!r}")
