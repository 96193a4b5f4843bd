"""Command-line front end: run any algorithm, cross-check it, benchmark it.

Every invocation prints one line-delimited JSON record per run (key=value
lines with --no-json): command, machine config, input summary, the answer,
the cost-counter snapshot for the algorithm run alone, the oracle-agreement
flag when --check is given, and informational wall time. Exit codes: 0 on
success (and check pass), 1 on oracle disagreement, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bench as bench_mod
from . import oracles
from .dp.four_russians import four_russians_solve
from .dp.knapsack import KnapsackInstance, knapsack_solve
from .dp.lcs import lcs_solve, lcs_recover, encode_pair
from .dp.subset_sum import subset_sum_solve
from .dps import DynamicPrefixSums
from .errors import BudgetExceeded, UwwordError
from .fsram import FsRam, parse_layout_text
from .machine import Machine
from .pq import PriorityQueue
from .search import encode_text_pair, search_cells, run_search, ALGORITHMS
from .wideword import WideConfig


class CheckFailure(Exception):
    pass


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--block-bits", type=int, default=64, help="bits per block (w)")
    p.add_argument("--blocks", type=int, default=64, help="blocks per wide word (k)")
    p.add_argument("--check", action="store_true", help="cross-check against the scalar oracle")
    p.add_argument("--json", action=argparse.BooleanOptionalAction, default=True,
                   help="line-JSON records (default) or key=value lines")
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True,
                   help="operand precondition checking in the simulator")


def _cfg(args) -> WideConfig:
    return WideConfig(args.block_bits, args.blocks)


def _emit(args, record: dict) -> None:
    if args.json:
        print(json.dumps(record))
    else:
        print(" ".join(f"{k}={record[k]}" for k in record))


def _record(args, command: str, input_summary: dict, answer, machine, check=None, t0=None):
    rec = {
        "command": command,
        "config": {"w": args.block_bits, "k": args.blocks},
        "input": input_summary,
        "answer": answer,
        "counters": machine.cost_report().as_dict() if machine else None,
        "wall_time_ms": round((time.perf_counter() - t0) * 1000, 3) if t0 else None,
    }
    if check is not None:
        rec["check"] = check
    _emit(args, rec)
    if check is False:
        raise CheckFailure(command)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x != ""]


def _read_text_arg(args, flag: str):
    inline = getattr(args, flag)
    path = getattr(args, f"{flag}_file")
    if (inline is None) == (path is None):
        raise UwwordError(f"provide exactly one of --{flag} or --{flag}-file")
    if inline is not None:
        return inline
    with open(path, "rb") as fh:
        return list(fh.read())


def _normalize_pair(a, b):
    """File inputs are byte values; lift a str partner to its bytes."""
    if isinstance(a, str) != isinstance(b, str):
        if isinstance(a, str):
            a = list(a.encode())
        else:
            b = list(b.encode())
    return a, b


def cmd_subsetsum(args) -> None:
    weights = _ints(args.weights)
    t0 = time.perf_counter()
    answer, machine = subset_sum_solve(weights, args.target, _cfg(args))
    check = None
    if args.check:
        try:
            expect = oracles.subset_sum_brute(weights, args.target).value
        except BudgetExceeded:
            expect = oracles.subset_sum_dp(weights, args.target).value
        check = answer == expect
    _record(args, "subsetsum", {"n": len(weights), "target": args.target},
            answer, machine, check, t0)


def cmd_knapsack(args) -> None:
    items = []
    for part in args.items.split(","):
        w, v = part.split(":")
        items.append((int(w), int(v)))
    inst = KnapsackInstance(items, args.capacity, value_bound=args.value_bound)
    t0 = time.perf_counter()
    answer, machine = knapsack_solve(inst, _cfg(args), alpha=args.alpha)
    check = None
    if args.check:
        check = answer == oracles.knapsack_dp(items, args.capacity).value
    _record(args, "knapsack",
            {"n": len(items), "capacity": args.capacity, "bound_m": inst.bound_m},
            answer, machine, check, t0)


def cmd_lcs(args) -> None:
    x, y = _normalize_pair(_read_text_arg(args, "x"), _read_text_arg(args, "y"))
    sigma = args.sigma
    t0 = time.perf_counter()
    if args.four_russians:
        res, machine = four_russians_solve(x, y, sigma, _cfg(args))
        answer = res.length
        summary = {"|x|": len(x), "|y|": len(y), "sigma": sigma,
                   "four_russians": True, "fell_back": res.fell_back, "t": res.t_side}
    else:
        res, machine = lcs_solve(x, y, sigma, _cfg(args), keep_diagonals=args.recover)
        answer = res.length
        summary = {"|x|": len(x), "|y|": len(y), "sigma": sigma}
    witness = None
    if args.recover:
        witness, _ = lcs_recover(machine, x, y, sigma,
                                 res if not args.four_russians else None)
        answer = {"length": res.length, "witness": witness if isinstance(witness, str)
                  else list(witness)}
    check = None
    if args.check:
        xs, ys = encode_pair(x, y, sigma)
        expect = oracles.lcs_table(xs, ys).value
        ok = res.length == expect
        if witness is not None:
            ws = witness if not isinstance(witness, str) else list(witness)
            xsq = x if not isinstance(x, str) else list(x)
            ysq = y if not isinstance(y, str) else list(y)
            ok = ok and len(ws) == expect
            ok = ok and oracles.is_subsequence(ws, xsq) and oracles.is_subsequence(ws, ysq)
        check = ok
    _record(args, "lcs", summary, answer, machine, check, t0)


def cmd_search(args) -> None:
    text, pattern = _normalize_pair(_read_text_arg(args, "text"),
                                    _read_text_arg(args, "pattern"))
    algo = args.algo
    ts, ps, sigma = encode_text_pair(text, pattern, args.sigma)
    cfg = _cfg(args)
    machine = Machine(cfg, search_cells(len(ts), len(ps), sigma, algo, cfg),
                      strict=args.strict)
    t0 = time.perf_counter()
    report = run_search(machine, algo, ts, ps, sigma)
    check = None
    if args.check:
        check = report.occurrences == oracles.oracle_search(ts, ps).value
    _record(args, "search",
            {"algo": algo, "n": len(ts), "m": len(ps), "sigma": sigma},
            {"occurrences": report.occurrences, "occ": report.occ},
            machine, check, t0)


def _parse_pq_trace(lines) -> list[tuple]:
    trace = []
    for ln in lines:
        parts = ln.split()
        if not parts:
            continue
        op = parts[0].lower()
        if op in ("insert", "delete"):
            trace.append((op, int(parts[1])))
        elif op == "min":
            trace.append(("min",))
        elif op in ("succ", "successor"):
            trace.append(("successor", int(parts[1])))
        else:
            raise UwwordError(f"bad trace line: {ln!r}")
    return trace


def cmd_pq_trace(args) -> None:
    with open(args.trace_file) as fh:
        trace = _parse_pq_trace(fh)
    q = PriorityQueue.create(args.universe, _cfg(args), strict=args.strict)
    t0 = time.perf_counter()
    outputs = []
    for op in trace:
        if op[0] == "insert":
            q.insert(op[1])
            outputs.append(None)
        elif op[0] == "delete":
            try:
                q.delete(op[1])
                outputs.append(None)
            except UwwordError:
                outputs.append("error")
        elif op[0] == "min":
            outputs.append(q.min())
        else:
            outputs.append(q.successor(op[1]))
    check = None
    if args.check:
        check = outputs == oracles.oracle_set(trace, args.universe)
    _record(args, "pq-trace", {"universe": args.universe, "ops": len(trace)},
            outputs, q.machine, check, t0)


def cmd_dps_trace(args) -> None:
    trace = []
    with open(args.trace_file) as fh:
        for ln in fh:
            parts = ln.split()
            if not parts:
                continue
            if parts[0] == "update":
                trace.append(("update", int(parts[1]), int(parts[2])))
            elif parts[0] == "retrieve":
                trace.append(("retrieve", int(parts[1])))
            else:
                raise UwwordError(f"bad trace line: {ln!r}")
    p = DynamicPrefixSums.create(args.items, args.universe, iota=args.iota,
                                 op=args.op, cfg=_cfg(args), strict=args.strict)
    t0 = time.perf_counter()
    outputs = []
    for entry in trace:
        if entry[0] == "update":
            p.update(entry[1], entry[2])
            outputs.append(None)
        else:
            outputs.append(p.retrieve(entry[1]))
    check = None
    if args.check:
        check = outputs == oracles.oracle_prefix_trace(trace, args.items,
                                                       args.universe, args.op)
    _record(args, "dps-trace",
            {"items": args.items, "universe": args.universe, "iota": args.iota,
             "op": args.op, "ops": len(trace), "table_cells": p.table_cells},
            outputs, p.machine, check, t0)


def cmd_fsram(args) -> None:
    with open(args.layout_file) as fh:
        layout = parse_layout_text(fh.read())
    cfg = _cfg(args)
    cells = layout.r * cfg.k + layout.n_bits + cfg.k + 8
    machine = Machine(cfg, cells, strict=args.strict)
    fs = FsRam(machine, layout)
    trace = []
    if args.trace_file:
        with open(args.trace_file) as fh:
            for ln in fh:
                parts = ln.split()
                if not parts:
                    continue
                if parts[0] == "read":
                    trace.append(("read", int(parts[1])))
                elif parts[0] == "write":
                    trace.append(("write", int(parts[1]), int(parts[2])))
                elif parts[0] == "poke":
                    trace.append(("poke", int(parts[1]), int(parts[2])))
                else:
                    raise UwwordError(f"bad trace line: {ln!r}")
    t0 = time.perf_counter()
    outputs = []
    for entry in trace:
        if entry[0] == "read":
            outputs.append(fs.read(entry[1]))
        elif entry[0] == "write":
            fs.write(entry[1], entry[2])
            outputs.append(None)
        else:
            fs.poke_bit(entry[1], entry[2])
            outputs.append(None)
    check = None
    if args.check:
        check = _full_replay(trace, layout) == outputs
    _record(args, "fsram",
            {"r": layout.r, "b": layout.b, "bits": layout.n_bits, "ops": len(trace)},
            outputs, machine, check, t0)


def _full_replay(trace, layout) -> list:
    """Flat bit-map reference for overlapped-register reads."""
    shadow = {}
    out = []
    for entry in trace:
        if entry[0] == "write":
            for j in range(layout.b):
                shadow[layout.table[entry[1]][j]] = (entry[2] >> j) & 1
            out.append(None)
        elif entry[0] == "poke":
            shadow[entry[1]] = entry[2]
            out.append(None)
        else:
            v = 0
            for j in range(layout.b):
                v |= shadow.get(layout.table[entry[1]][j], 0) << j
            out.append(v)
    return out


def cmd_bench(args) -> None:
    cfg = _cfg(args)
    sizes = _ints(args.sizes)
    if args.algo == "subsetsum":
        records = bench_mod.bench_subset_sum(sizes, n_items=args.n_items, cfg=cfg)
    elif args.algo in ("shift-and", "shift-or", "bmh", "shift-and-parallel"):
        records = bench_mod.bench_search(sizes, algo=args.algo,
                                         pattern_len=args.pattern_len, cfg=cfg)
    elif args.algo == "knapsack":
        records = bench_mod.bench_knapsack_rows(sizes, n_items=args.n_items, cfg=cfg)
    else:
        raise UwwordError(f"no benchmark for algorithm {args.algo!r}")
    for rec in records:
        _emit(args, rec)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uwword",
                                 description="wide-word machine algorithm runner")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("subsetsum", help="subset-sum decision")
    p.add_argument("--weights", required=True, help="comma-separated weights")
    p.add_argument("--target", type=int, required=True)
    _common_flags(p)
    p.set_defaults(fn=cmd_subsetsum)

    p = sub.add_parser("knapsack", help="0/1 knapsack optimum")
    p.add_argument("--items", required=True, help="weight:value pairs, comma-separated")
    p.add_argument("--capacity", type=int, required=True)
    p.add_argument("--value-bound", type=int, default=None)
    p.add_argument("--alpha", type=int, default=1)
    _common_flags(p)
    p.set_defaults(fn=cmd_knapsack)

    p = sub.add_parser("lcs", help="longest common subsequence length")
    p.add_argument("--x", default=None)
    p.add_argument("--x-file", default=None)
    p.add_argument("--y", default=None)
    p.add_argument("--y-file", default=None)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--four-russians", action="store_true")
    p.add_argument("--recover", action="store_true")
    _common_flags(p)
    p.set_defaults(fn=cmd_lcs)

    p = sub.add_parser("search", help="pattern occurrences in a text")
    p.add_argument("--algo", choices=ALGORITHMS, default="shift-and")
    p.add_argument("--pattern", default=None)
    p.add_argument("--pattern-file", default=None)
    p.add_argument("--text", default=None)
    p.add_argument("--text-file", default=None)
    p.add_argument("--sigma", type=int, default=None)
    _common_flags(p)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("pq-trace", help="run a priority-queue op trace")
    p.add_argument("--trace-file", required=True)
    p.add_argument("--universe", type=int, required=True)
    _common_flags(p)
    p.set_defaults(fn=cmd_pq_trace)

    p = sub.add_parser("dps-trace", help="run a dynamic-prefix-sums op trace")
    p.add_argument("--trace-file", required=True)
    p.add_argument("--items", type=int, required=True)
    p.add_argument("--universe", type=int, required=True)
    p.add_argument("--iota", type=int, default=1)
    p.add_argument("--op", choices=("add", "max"), default="add")
    _common_flags(p)
    p.set_defaults(fn=cmd_dps_trace)

    p = sub.add_parser("fsram", help="drive an overlapped-register layout")
    p.add_argument("--layout-file", required=True)
    p.add_argument("--trace-file", default=None)
    _common_flags(p)
    p.set_defaults(fn=cmd_fsram)

    p = sub.add_parser("bench", help="instruction-count speedup sweeps")
    p.add_argument("--algo", required=True)
    p.add_argument("--sizes", required=True, help="comma-separated sweep points")
    p.add_argument("--baseline", choices=("wordram", "naive"), default="wordram")
    p.add_argument("--n-items", type=int, default=64)
    p.add_argument("--pattern-len", type=int, default=None)
    _common_flags(p)
    p.set_defaults(fn=cmd_bench)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        args.fn(args)
    except CheckFailure:
        return 1
    except (UwwordError, ValueError, OSError) as e:
        print(f"uwword: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
