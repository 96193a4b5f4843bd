"""Overlapped-register (FS-RAM / RAMBO) memory simulated on the wide machine.

An FS-RAM layout is a table R of r registers by b bit-slots; R[i][j] names
the shared bit stored at bit j of register i, so one physical bit can appear
in many registers and a write through one register is visible through all of
them. The simulation keeps each shared bit in its own w-bit cell of an array
A and uses the parallel gather/scatter accesses plus compress/spread to move
a whole register in a constant number of machine operations: reading a
register is read_word + read_content + compress + write_block, and writing is
read_block + spread + read_word + write_content -- four wide primitives each,
independent of r and b.

The Yggdrasil layout stores one bit per internal node of a complete binary
tree over a universe of M = 2**m leaves; register i holds the leaf-to-root
path of leaf pair (2i, 2i+1), with bit j of register i naming tree node
(i >> j) + 2**(m-j-1) in heap numbering (bit identifiers here are that node
number minus one, so they start at zero).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MemoryFault, UwwordError
from .machine import Machine


@dataclass(frozen=True)
class FsRamLayout:
    """Register-to-bit table: table[i][j] is the bit id at reg[i].bit[j]."""

    r: int
    b: int
    n_bits: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.r < 1 or self.b < 1 or self.n_bits < 1:
            raise ValueError("layout dimensions must be positive")
        if len(self.table) != self.r:
            raise ValueError("table row count does not match r")
        for i, row in enumerate(self.table):
            if len(row) != self.b:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.b}")
            seen: set[int] = set()
            for j, ident in enumerate(row):
                if not 0 <= ident < self.n_bits:
                    raise ValueError(f"bit id {ident} at [{i}][{j}] out of range")
                if ident in seen:
                    # duplicate ids in one register make the parallel write
                    # target the same cell twice (CREW violation)
                    raise ValueError(f"register {i} names bit {ident} twice")
                seen.add(ident)


def yggdrasil_layout(depth: int) -> FsRamLayout:
    """Complete-binary-tree layout over universe size M = 2**depth."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    m_univ = 1 << depth
    rows = []
    for i in range(m_univ // 2):
        rows.append(tuple((i >> j) + (1 << (depth - j - 1)) - 1 for j in range(depth)))
    return FsRamLayout(r=m_univ // 2, b=depth, n_bits=m_univ - 1, table=tuple(rows))


def parse_layout_text(text: str) -> FsRamLayout:
    """Parse the plain-text layout format: 'r b B' header, then r rows of b ids."""
    tokens = text.split()
    if len(tokens) < 3:
        raise ValueError("layout file needs an 'r b B' header")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as e:
        raise ValueError(f"layout file has a non-integer token: {e}") from None
    r, b, n_bits = nums[0], nums[1], nums[2]
    body = nums[3:]
    if len(body) != r * b:
        raise ValueError(f"layout body has {len(body)} ids, expected {r}*{b}={r * b}")
    rows = tuple(tuple(body[i * b : (i + 1) * b]) for i in range(r))
    return FsRamLayout(r=r, b=b, n_bits=n_bits, table=rows)


def format_layout_text(layout: FsRamLayout) -> str:
    lines = [f"{layout.r} {layout.b} {layout.n_bits}"]
    for row in layout.table:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


class FsRam:
    """A layout resident in machine memory, with constant-cost register access.

    Memory plan: the R table occupies r rows of k cells each (rows longer
    than b are padded with sacrificial bit ids so the k-wide gather/scatter
    never touches a live bit), followed by the bit array A of n_bits cells,
    the sacrificial cells, and two scratch cells for block transfers.
    """

    def __init__(self, machine: Machine, layout: FsRamLayout):
        cfg = machine.cfg
        if layout.b > cfg.w:
            raise UwwordError(f"register width b={layout.b} exceeds cell width w={cfg.w}")
        if layout.b > cfg.k:
            raise UwwordError(f"register width b={layout.b} exceeds block count k={cfg.k}")
        if layout.n_bits + cfg.k >= 1 << cfg.w:
            raise UwwordError("bit identifiers must fit the w-bit address space")
        self.machine = machine
        self.layout = layout
        k = cfg.k
        pad = k - layout.b
        self.r_base = machine.alloc(layout.r * k)
        self.a_base = machine.alloc(layout.n_bits + pad)
        self.ret_addr = machine.alloc(1)
        self.in_addr = machine.alloc(1)
        mem = machine.mem
        for i, row in enumerate(layout.table):
            base = self.r_base + i * k
            for j, ident in enumerate(row):
                mem[base + j] = ident
            for q in range(pad):
                mem[base + layout.b + q] = layout.n_bits + q

    def _row_base(self, t: int) -> int:
        if not 0 <= t < self.layout.r:
            raise MemoryFault("fsram register", t)
        return self.r_base + t * self.machine.cfg.k

    def read(self, t: int) -> int:
        """reg[t] as a b-bit value, bit j carrying shared bit R[t][j]."""
        m = self.machine
        w = m.read_word(self._row_base(t))
        w = m.read_content(w, self.a_base)
        w = m.compress(w)
        m.write_block(w, 0, self.ret_addr)
        m.tick_scalar()  # mask to b bits
        return m.load(self.ret_addr) & ((1 << self.layout.b) - 1)

    def write(self, t: int, bits: int) -> None:
        """Set reg[t] <- bits, updating every shared bit on the register."""
        if not 0 <= bits < (1 << self.layout.b):
            raise ValueError(f"value {bits} does not fit {self.layout.b} bits")
        m = self.machine
        row = self._row_base(t)
        m.store(self.in_addr, bits)
        w = m.read_block(m.zero(), 0, self.in_addr)
        w = m.spread(w)
        v = m.read_word(row)
        m.write_content(w, v, self.a_base)

    # -- host-side inspection/seeding helpers (not part of the machine) ------

    def peek_bit(self, ident: int) -> int:
        return self.machine.mem[self.a_base + ident]

    def peek_bits(self) -> list[int]:
        return self.machine.mem[self.a_base : self.a_base + self.layout.n_bits]

    def poke_bit(self, ident: int, value: int) -> None:
        if value not in (0, 1):
            raise ValueError("bit value must be 0 or 1")
        self.machine.mem[self.a_base + ident] = value
