"""Scalar reference implementations for differential testing.

Everything here is deliberately independent of the wide-word code paths:
plain enumeration and classic textbook DP only. The oracles ship in the
library (not just the test tree) so the CLI can cross-check any run with
--check. Budgets are enforced so a stray huge input fails loudly instead of
hanging.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, UwwordError

BRUTE_SUBSET_BUDGET = 1 << 22
DP_CELL_BUDGET = 10**7


@dataclass
class OracleResult:
    value: Any
    trace: Any = None


def subset_sum_brute(weights: Sequence[int], target: int) -> OracleResult:
    """Enumerate all 2**n subset sums."""
    n = len(weights)
    if 1 << n > BRUTE_SUBSET_BUDGET:
        raise BudgetExceeded(f"2^{n} subsets exceed the brute-force budget")
    sums = np.zeros(1, dtype=np.int64)
    for a in weights:
        sums = np.concatenate([sums, sums + a])
    return OracleResult(bool(np.any(sums == target)))


def subset_sum_dp(weights: Sequence[int], target: int) -> OracleResult:
    if len(weights) * max(target, 1) > DP_CELL_BUDGET:
        raise BudgetExceeded("subset-sum DP table exceeds the cell budget")
    reach = np.zeros(target + 1, dtype=bool)
    reach[0] = True
    for a in weights:
        if a <= target:
            shifted = np.zeros_like(reach)
            shifted[a:] = reach[: target + 1 - a]
            reach |= shifted
    return OracleResult(bool(reach[target]))


def subset_sum_rows(weights: Sequence[int], target: int) -> list[list[int]]:
    """Row-by-row reachability bitmaps (for row-invariant checks)."""
    rows = []
    reach = [0] * (target + 1)
    reach[0] = 1
    rows.append(list(reach))
    for a in weights:
        nxt = list(reach)
        for j in range(target, a - 1, -1):
            if reach[j - a]:
                nxt[j] = 1
        reach = nxt
        rows.append(list(reach))
    return rows


def knapsack_dp(items: Sequence[tuple[int, int]], capacity: int) -> OracleResult:
    if len(items) * max(capacity, 1) > DP_CELL_BUDGET:
        raise BudgetExceeded("knapsack DP table exceeds the cell budget")
    dp = [0] * (capacity + 1)
    for w, v in items:
        if w > capacity:
            continue
        for j in range(capacity, w - 1, -1):
            cand = dp[j - w] + v
            if cand > dp[j]:
                dp[j] = cand
    return OracleResult(max(dp))


def lcs_table(xs: Sequence[int], ys: Sequence[int]) -> OracleResult:
    """Classic DP; value is the length, trace the full (m+1)x(n+1) table."""
    m, n = len(xs), len(ys)
    if (m + 1) * (n + 1) > DP_CELL_BUDGET:
        raise BudgetExceeded("LCS table exceeds the cell budget")
    table = np.zeros((m + 1, n + 1), dtype=np.int32)
    yarr = np.asarray(list(ys), dtype=np.int32) if n else np.zeros(0, dtype=np.int32)
    for i in range(1, m + 1):
        prev = table[i - 1]
        eq = (yarr == xs[i - 1]).astype(np.int32)
        cand = np.maximum(prev[1:], prev[:-1] + eq)
        table[i, 1:] = np.maximum.accumulate(cand)
    return OracleResult(int(table[m, n]), trace=table)


def prefix_sums(bits: Sequence[int], q: int) -> OracleResult:
    if not 0 <= q < len(bits):
        raise UwwordError("query index out of range")
    return OracleResult(sum(bits[: q + 1]))


def oracle_dp(kind: str, *args) -> OracleResult:
    """Dispatch by kind: subset_sum_brute | subset_sum_dp | knapsack_dp |
    lcs_table | prefix_sums."""
    table = {
        "subset_sum_brute": subset_sum_brute,
        "subset_sum_dp": subset_sum_dp,
        "knapsack_dp": knapsack_dp,
        "lcs_table": lcs_table,
        "prefix_sums": prefix_sums,
    }
    if kind not in table:
        raise ValueError(f"unknown oracle kind {kind!r}")
    return table[kind](*args)


def is_subsequence(sub: Sequence, full: Sequence) -> bool:
    it = iter(full)
    return all(any(c == f for f in it) for c in sub)


def oracle_search(text: Sequence, pattern: Sequence) -> OracleResult:
    """Naive O(nm) matcher; 1-based occurrence starts."""
    if len(pattern) == 0:
        raise UwwordError("empty pattern")
    n, m = len(text), len(pattern)
    hits = [i + 1 for i in range(n - m + 1) if tuple(text[i : i + m]) == tuple(pattern)]
    return OracleResult(hits)


def oracle_bmh_scalar(text: Sequence[int], pattern: Sequence[int], sigma: int) -> OracleResult:
    """Scalar Horspool; value = occurrence list, trace = window positions."""
    if len(pattern) == 0:
        raise UwwordError("empty pattern")
    n, m = len(text), len(pattern)
    jump = [m] * sigma
    for j in range(1, m):
        jump[pattern[j - 1]] = m - j
    hits: list[int] = []
    windows: list[int] = []
    i = 0
    while i <= n - m:
        windows.append(i + 1)
        j = m
        while j > 0 and text[i + j - 1] == pattern[j - 1]:
            j -= 1
        if j == 0:
            hits.append(i + 1)
        i += jump[text[i + m - 1]]
    return OracleResult(hits, trace=windows)


def oracle_set(trace: Iterable[tuple], universe: int) -> list:
    """Sorted-set semantics for priority-queue traces.

    Ops: ('insert', x), ('delete', x), ('min',), ('successor', x).
    Returns one entry per op: None for updates, the answer for queries;
    a delete of an absent element yields the string 'error'.
    """
    present: list[int] = []
    out = []
    for op in trace:
        name = op[0]
        if name == "insert":
            x = op[1]
            if not 0 <= x < universe:
                raise UwwordError(f"element {x} outside universe")
            i = bisect.bisect_left(present, x)
            if i == len(present) or present[i] != x:
                present.insert(i, x)
            out.append(None)
        elif name == "delete":
            x = op[1]
            i = bisect.bisect_left(present, x)
            if i < len(present) and present[i] == x:
                present.pop(i)
                out.append(None)
            else:
                out.append("error")
        elif name == "min":
            out.append(present[0] if present else None)
        elif name == "successor":
            x = op[1]
            i = bisect.bisect_right(present, x)
            out.append(present[i] if i < len(present) else None)
        else:
            raise UwwordError(f"malformed trace op {op!r}")
    return out


def oracle_prefix_trace(
    trace: Iterable[tuple], n_items: int, universe: int, op: str = "add"
) -> list:
    """Array-scan semantics for dynamic-prefix-sum traces.

    Ops: ('update', j, d), ('retrieve', j).
    """
    if op == "add":
        combine = lambda a, b: (a + b) % universe  # noqa: E731
    elif op == "max":
        combine = max
    else:
        raise UwwordError(f"unknown op {op!r}")
    arr = [0] * n_items
    out = []
    for entry in trace:
        name = entry[0]
        if name == "update":
            _, j, d = entry
            if not (0 <= j < n_items and 0 <= d < universe):
                raise UwwordError(f"malformed update {entry!r}")
            arr[j] = combine(arr[j], d)
            out.append(None)
        elif name == "retrieve":
            j = entry[1]
            if not 0 <= j < n_items:
                raise UwwordError(f"malformed retrieve {entry!r}")
            acc = 0
            for v in arr[: j + 1]:
                acc = combine(acc, v)
            out.append(acc)
        else:
            raise UwwordError(f"malformed trace op {entry!r}")
    return out
