"""Counter-based speedup measurements: wide machine vs its k=1 restriction.

Wall-clock time means nothing for a simulated machine, so every claim is
expressed as a ratio of charged instruction counts between a run on a k-block
machine and the same algorithm restricted to k = 1 (the plain word-RAM
baseline). Records are plain dicts ready for line-JSON output.
"""

from __future__ import annotations

import random
from typing import Sequence

from .machine import Machine
from .wideword import WideConfig
from .dp.subset_sum import SubsetSumEngine
from .dp.knapsack import KnapsackInstance, knapsack_solve
from .search import search_cells, run_search, encode_text_pair


def _subset_row_ops(cfg: WideConfig, weights: Sequence[int], target: int) -> int:
    n_cells = -(-(target + 1) // cfg.w)
    cells = -(-n_cells // cfg.k) * cfg.k + 2 * cfg.k + 8
    machine = Machine(cfg, cells)
    engine = SubsetSumEngine(machine, target)
    before = machine.cost_report()
    for a in weights:
        engine.fold_item(a)
    delta = machine.cost_report().delta(before)
    return delta.wide_alu + delta.wide_mem


def bench_subset_sum(
    targets: Sequence[int],
    n_items: int = 64,
    cfg: WideConfig | None = None,
    seed: int = 0,
) -> list[dict]:
    """Row-update op ratio between the k=1 baseline and the wide machine."""
    cfg = cfg or WideConfig(64, 64)
    base_cfg = WideConfig(cfg.w, 1)
    rng = random.Random(seed)
    records = []
    for t in targets:
        weights = [rng.randint(1, t) for _ in range(n_items)]
        wide_ops = _subset_row_ops(cfg, weights, t)
        base_ops = _subset_row_ops(base_cfg, weights, t)
        records.append(
            {
                "bench": "subsetsum",
                "target": t,
                "n_items": n_items,
                "config": {"w": cfg.w, "k": cfg.k},
                "wide_ops": wide_ops,
                "baseline_ops": base_ops,
                "ratio": base_ops / wide_ops if wide_ops else None,
            }
        )
    return records


def _search_ops(cfg: WideConfig, algo: str, ts: list[int], ps: list[int], sigma: int) -> int:
    machine = Machine(cfg, search_cells(len(ts), len(ps), sigma, algo, cfg))
    before = machine.cost_report()
    run_search(machine, algo, ts, ps, sigma)
    delta = machine.cost_report().delta(before)
    return delta.wide_alu + delta.wide_mem


def bench_search(
    text_lengths: Sequence[int],
    algo: str = "shift-and",
    pattern_len: int | None = None,
    sigma: int = 4,
    cfg: WideConfig | None = None,
    seed: int = 0,
) -> list[dict]:
    """Per-character wide-op counts against the k=1 baseline."""
    cfg = cfg or WideConfig(64, 64)
    base_cfg = WideConfig(cfg.w, 1)
    rng = random.Random(seed)
    m_pat = pattern_len if pattern_len is not None else cfg.total_bits
    records = []
    for n in text_lengths:
        ts = [rng.randrange(sigma) for _ in range(n)]
        ps = [rng.randrange(sigma) for _ in range(m_pat)]
        wide_ops = _search_ops(cfg, algo, ts, ps, sigma)
        base_ops = _search_ops(base_cfg, algo, ts, ps, sigma) if algo in (
            "shift-and",
            "shift-or",
            "bmh",
        ) else None
        rec = {
            "bench": "search",
            "algo": algo,
            "n": n,
            "m": m_pat,
            "sigma": sigma,
            "config": {"w": cfg.w, "k": cfg.k},
            "wide_ops": wide_ops,
            "per_char": wide_ops / n if n else None,
        }
        if base_ops is not None:
            rec["baseline_ops"] = base_ops
            rec["ratio"] = base_ops / wide_ops if wide_ops else None
        records.append(rec)
    return records


def bench_knapsack_rows(
    bounds: Sequence[int],
    n_items: int = 12,
    cfg: WideConfig | None = None,
    seed: int = 0,
) -> list[dict]:
    """Per-row wide-op count, normalized by m/(k*w), across a bound sweep."""
    cfg = cfg or WideConfig(64, 64)
    rng = random.Random(seed)
    records = []
    for m_bound in bounds:
        cap = m_bound // 2
        items = [
            (rng.randint(1, max(1, cap // 2)), rng.randint(1, max(1, m_bound // n_items)))
            for _ in range(n_items)
        ]
        inst = KnapsackInstance(items, cap, value_bound=m_bound)
        value, machine = knapsack_solve(inst, cfg)
        counters = machine.cost_report()
        wide = counters.wide_alu + counters.wide_mem
        per_row = wide / n_items
        records.append(
            {
                "bench": "knapsack",
                "bound_m": m_bound,
                "capacity": cap,
                "n_items": n_items,
                "config": {"w": cfg.w, "k": cfg.k},
                "value": value,
                "wide_ops": wide,
                "per_row": per_row,
                "normalized": per_row / (m_bound / (cfg.k * cfg.w)),
            }
        )
    return records
