"""0/1 knapsack via undominated-pair rows updated k columns per operation.

Row state follows the two-bit-table formulation: g marks weights and h marks
values of undominated (weight, value) solution pairs; reading both in rank
order recovers the Pareto frontier, so the row also carries rank-indexed
weight/value arrays. Folding in an item merges the frontier with its
(w_i, v_i)-shifted copy:

  1. prefix counts of the g row give every column its pair rank in O(1);
  2. per k columns, two gathers fetch the candidate values (the pair at the
     column and the pair at column - w_i, value lifted by v_i) from the
     rank-value array -- the parallel table-lookup step -- and a blockwise
     max picks the better candidate;
  3. a parallel prefix max turns dominance into a per-column comparison
     (candidate survives iff it beats every value to its left);
  4. survivor bits become the new g row, survivor values scatter into the
     new h row, and a survivor-rank prefix compacts the new rank arrays.

Values are stored offset by one so that zero means "no pair". A single tiny
transition table (candidate-presence x comparison -> emitted pair) documents
the per-column decision rule; the wide path evaluates the same rule with
mask algebra, and the alpha knob groups this many columns per conceptual
composed-table lookup (results are identical for any alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import UwwordError
from ..machine import Machine
from ..wideword import WideConfig
from . import parallel

# per-column decision rule: (old candidate?, shifted candidate?, old >= shifted)
# -> (emit candidate?, take shifted?); dominance against the running max is
# applied to the emitted candidate afterwards.
TRANSITION = {
    (0, 0, False): (0, 0),
    (0, 0, True): (0, 0),
    (0, 1, False): (1, 1),
    (0, 1, True): (1, 1),
    (1, 0, False): (1, 0),
    (1, 0, True): (1, 0),
    (1, 1, False): (1, 1),
    (1, 1, True): (1, 0),
}


def dantzig_bound(items: Sequence[tuple[int, int]], capacity: int) -> int:
    """Greedy fractional upper bound on the optimal value."""
    order = sorted(
        (it for it in items if it[0] <= capacity or it[0] == 0),
        key=lambda it: Fraction(it[1], it[0]) if it[0] else Fraction(it[1] + 1, 1),
        reverse=True,
    )
    rem = capacity
    total = Fraction(0)
    for w, v in order:
        if w == 0:
            total += v
            continue
        if w <= rem:
            total += v
            rem -= w
        else:
            total += Fraction(v * rem, w)
            break
    return math.ceil(total)


@dataclass
class KnapsackInstance:
    items: list[tuple[int, int]]
    capacity: int
    value_bound: int | None = None
    bound_m: int = field(init=False)

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError("capacity must be nonnegative")
        for w, v in self.items:
            if w < 0 or v < 0:
                raise ValueError("weights and values must be nonnegative")
        ub = self.value_bound if self.value_bound is not None else dantzig_bound(
            self.items, self.capacity
        )
        self.bound_m = max(self.capacity, ub)


class _Row:
    """Machine-resident row: 0/1 column array plus rank-indexed pair arrays."""

    def __init__(self, m: Machine, blen: int, pad: int):
        self.g_region = m.alloc(blen + pad)  # blen lead-in zeros for offset reads
        self.g = self.g_region + blen
        self.weights = m.alloc(blen + 1)
        self.values = m.alloc(blen + 1)


def knapsack(machine: Machine, inst: KnapsackInstance, alpha: int = 1) -> int:
    """Optimal total value within capacity; 0 for an empty instance."""
    if alpha < 1:
        raise ValueError("alpha must be positive")
    m = machine
    k = m.cfg.k
    blen = inst.capacity + 1
    mlen = inst.bound_m + 1
    if inst.bound_m + 2 >= 1 << (m.cfg.w - 1):
        raise UwwordError("value bound overflows the blockwise comparator range")
    span_pad = parallel.padded_len(m, blen) + 2 * k  # scan region + read overhang
    rows = (_Row(m, blen, span_pad), _Row(m, blen, span_pad))
    r_region = m.alloc(blen + span_pad)  # rank array, with lead-in zeros
    r_base = r_region + blen
    vstar = m.alloc(span_pad)
    pm_region = m.alloc(1 + span_pad)  # one permanent zero cell before
    pm = pm_region + 1
    sr = m.alloc(span_pad)
    hstage = m.alloc(((mlen + k - 1) // k) * k)
    dump = m.alloc(k)
    ones01 = m.const(m.cfg.block_ones)
    dump_ramp = m.const_limbs([dump + j for j in range(k)])
    layout = parallel.block_layout(m)

    cur, nxt = rows
    m.store(cur.g, 1)
    m.store(cur.values + 1, 1)  # empty solution: weight 0, value 0 (stored +1)
    m.store(cur.weights + 1, 0)
    cnt = 1

    for wi, vi in inst.items:
        m.tick_scalar()
        if wi > inst.capacity:
            continue  # the item fits nothing; the frontier is unchanged
        # rank array: inclusive prefix counts of the g row
        parallel.copy_cells(m, cur.g, r_base, blen)
        parallel.prefix_combine_inplace(m, r_base, blen, "add")
        # candidate pass: per k columns, gather both candidate values and
        # keep the blockwise max (the TRANSITION rule in mask form)
        varr_off = m.const_limbs([cur.values] * k)
        vi_word = m.const_limbs([vi] * k)
        for u0 in range(0, blen, k):
            gw = m.read_word(cur.g + u0)
            gsw = m.read_word(cur.g + u0 - wi)
            rw = m.read_word(r_base + u0)
            rsw = m.read_word(r_base + u0 - wi)
            vo = m.read_content(m.w_add(rw, varr_off), 0)
            vs = m.w_add(m.read_content(m.w_add(rsw, varr_off), 0), vi_word)
            vom = m.w_and(vo, parallel.block_mask_word(m, gw))
            vsm = m.w_and(vs, parallel.block_mask_word(m, gsw))
            m.write_word(m.field_max(vom, vsm, layout), vstar + u0)
        # dominance: exclusive running max over candidate values
        parallel.copy_cells(m, vstar, pm, blen)
        parallel.prefix_combine_inplace(m, pm, blen, "max")
        # survivors: candidate strictly above everything to its left,
        # masked to live columns so the pad cells of g stay zero
        for u0 in range(0, blen, k):
            vst = m.read_word(vstar + u0)
            pmx = m.read_word(pm + u0 - 1)
            ge = m.field_ge_mask(pmx, vst, layout)
            live = ones01 if u0 + k <= blen else m.const(
                sum(1 << (j * m.cfg.w) for j in range(blen - u0))
            )
            s01 = m.w_and(m.w_xor(m.w_and(ge, ones01), ones01), live)
            m.write_word(s01, nxt.g + u0)
        parallel.copy_cells(m, nxt.g, sr, blen)
        parallel.prefix_combine_inplace(m, sr, blen, "add")
        # emit: h bits at value positions, rank-compacted pair arrays
        parallel.fill_cells(m, hstage, mlen)
        wnew_off = m.const_limbs([nxt.weights] * k)
        vnew_off = m.const_limbs([nxt.values] * k)
        h_off = m.const_limbs([hstage - 1] * k)
        cols = m.const_limbs(list(range(k)))
        kstep = m.const_limbs([k] * k)
        for u0 in range(0, blen, k):
            s01 = m.read_word(nxt.g + u0)
            sm = parallel.block_mask_word(m, s01)
            not_sm = m.w_not(sm)
            vst = m.read_word(vstar + u0)
            haddr = m.w_or(m.w_and(m.w_add(vst, h_off), sm), m.w_and(dump_ramp, not_sm))
            m.write_content(ones01, haddr, 0)
            srw = m.read_word(sr + u0)
            waddr = m.w_or(m.w_and(m.w_add(srw, wnew_off), sm), m.w_and(dump_ramp, not_sm))
            m.write_content(cols, waddr, 0)
            vaddr = m.w_or(m.w_and(m.w_add(srw, vnew_off), sm), m.w_and(dump_ramp, not_sm))
            m.write_content(vst, vaddr, 0)
            cols = m.w_add(cols, kstep)
        cnt = m.load(sr + blen - 1)
        m.store(nxt.values, 0)
        best = m.load(nxt.values + cnt)
        m.tick_scalar()
        if best - 1 > inst.bound_m:
            raise UwwordError("value bound overflow: raise the instance bound")
        cur, nxt = nxt, cur
    m.tick_scalar()
    return m.load(cur.values + cnt) - 1


def knapsack_solve(
    inst: KnapsackInstance, cfg: WideConfig | None = None, alpha: int = 1
) -> tuple[int, Machine]:
    """Size a machine for the instance and solve on it."""
    cfg = cfg or WideConfig(64, 64)
    k = cfg.k
    blen = inst.capacity + 1
    mlen = inst.bound_m + 1
    span = (blen + k * k - 1) // (k * k) * (k * k) + 3 * k + blen
    cells = (
        2 * (3 * blen + span + 2)   # two row buffers with rank arrays
        + (blen + span)             # prefix-count array with lead-in pad
        + 3 * (span + 2)            # vstar, pm, sr
        + -(-mlen // k) * k + 2 * k + 64
    )
    machine = Machine(cfg, cells)
    return knapsack(machine, inst, alpha=alpha), machine
