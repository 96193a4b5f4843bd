"""uwword: an ultra-wide word machine simulator and its algorithm suite.

The machine model is a word-RAM with w-bit cells extended by an ALU over
wide words of k blocks of w bits, parallel block/word/content memory access,
and the compress/spread bit-marshalling primitives. Every operation is
charged to a cost counter, so algorithmic speedup claims are measured as
instruction-count ratios rather than wall-clock time.

Subsystems: wide-word core (`wideword`), the machine and its memory
(`machine`), overlapped-register memory simulation plus the priority queue
and dynamic prefix sums built on it (`fsram`, `pq`, `dps`), bit-parallel
dynamic programming (`dp`), string search (`search`), scalar oracles
(`oracles`), and counter benchmarks (`bench`).
"""

from .errors import (
    BudgetExceeded,
    ConfigMismatch,
    CrewViolation,
    MemoryFault,
    PreconditionError,
    UwwordError,
)
from .wideword import (
    FieldLayout,
    WideConfig,
    WideWord,
    compress,
    field_ge_mask,
    field_max,
    shift_to_high,
    shift_to_low,
    spread,
    wide_add,
    wide_and,
    wide_from_limbs,
    wide_from_value,
    wide_not,
    wide_or,
    wide_sub,
    wide_xor,
    wide_zero,
)
from .machine import CostCounter, Machine, mem_read, mem_write
from .fsram import FsRam, FsRamLayout, format_layout_text, parse_layout_text, yggdrasil_layout
from .pq import PriorityQueue, pq_modify, pq_query
from .dps import DynamicPrefixSums, dps_retrieve, dps_update
from .dp import (
    KnapsackInstance,
    LcsResult,
    PrefixSumIndex,
    SubsetSumEngine,
    knapsack,
    lcs_four_russians,
    lcs_length,
    lcs_recover,
    static_prefix_sums,
    subset_sum,
)
from .dp.subset_sum import subset_sum_solve
from .dp.knapsack import knapsack_solve
from .dp.lcs import lcs_solve
from .dp.four_russians import four_russians_solve
from .search import (
    SearchReport,
    bmh_wide,
    run_search,
    search_solve,
    shift_and_parallel,
    shift_and_wide,
    shift_or,
)
from . import oracles, bench

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ConfigMismatch",
    "CrewViolation",
    "MemoryFault",
    "PreconditionError",
    "UwwordError",
    "FieldLayout",
    "WideConfig",
    "WideWord",
    "compress",
    "spread",
    "field_ge_mask",
    "field_max",
    "shift_to_high",
    "shift_to_low",
    "wide_add",
    "wide_and",
    "wide_from_limbs",
    "wide_from_value",
    "wide_not",
    "wide_or",
    "wide_sub",
    "wide_xor",
    "wide_zero",
    "CostCounter",
    "Machine",
    "mem_read",
    "mem_write",
    "FsRam",
    "FsRamLayout",
    "yggdrasil_layout",
    "parse_layout_text",
    "format_layout_text",
    "PriorityQueue",
    "pq_modify",
    "pq_query",
    "DynamicPrefixSums",
    "dps_update",
    "dps_retrieve",
    "SubsetSumEngine",
    "subset_sum",
    "subset_sum_solve",
    "PrefixSumIndex",
    "static_prefix_sums",
    "KnapsackInstance",
    "knapsack",
    "knapsack_solve",
    "LcsResult",
    "lcs_length",
    "lcs_recover",
    "lcs_solve",
    "lcs_four_russians",
    "four_russians_solve",
    "SearchReport",
    "shift_and_wide",
    "shift_and_parallel",
    "shift_or",
    "bmh_wide",
    "run_search",
    "search_solve",
    "oracles",
    "bench",
]
