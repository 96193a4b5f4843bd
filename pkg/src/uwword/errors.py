"""Exception types shared across the simulator."""

from __future__ import annotations


class UwwordError(Exception):
    """Base class for all simulator errors."""


class ConfigMismatch(UwwordError):
    """Two wide words with different (w, k) configurations were combined."""


class PreconditionError(UwwordError):
    """A strict-mode operand precondition was violated."""


class MemoryFault(UwwordError):
    """An address produced by a memory operation fell outside machine memory."""

    def __init__(self, kind: str, address: int, block: int | None = None):
        self.kind = kind
        self.address = address
        self.block = block
        where = f" (block {block})" if block is not None else ""
        super().__init__(f"{kind}: address {address} out of bounds{where}")


class CrewViolation(UwwordError):
    """write_content targeted the same cell from two blocks (CREW discipline)."""

    def __init__(self, address: int, blocks: tuple[int, int]):
        self.address = address
        self.blocks = blocks
        super().__init__(
            f"write_content: blocks {blocks[0]} and {blocks[1]} both target address {address}"
        )


class BudgetExceeded(UwwordError):
    """A brute-force oracle was asked for more work than its documented budget."""
