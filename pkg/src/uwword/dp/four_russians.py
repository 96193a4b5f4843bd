"""LCS via precomputed t-by-t difference blocks looked up k at a time.

A block of the H/V difference tables is fully determined by its top H row,
left V column, and the two length-t substrings it covers, so every possible
block is precomputed once into a table keyed by those packed bits, and the
main sweep fills the tables a block-antidiagonal at a time: one gather
fetches up to k block results simultaneously. Rows and columns beyond the
largest t-aligned region are finished with the scalar difference recurrence,
which also covers inputs of unequal length.

When the block side would round down to zero the whole computation falls
back to the diagonal engine (flagged in the result).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from ..errors import UwwordError
from ..machine import Machine
from ..wideword import WideConfig
from .lcs import encode_pair, lcs_length

_TABLE_KEY_BUDGET = 22  # max key bits for an in-memory block table


@dataclass
class FourRussiansResult:
    length: int
    fell_back: bool
    t_side: int
    table_cells: int


def block_side(n: int, sigma: int, w: int) -> int:
    """t = log_{2 sigma}(n) / 2, clamped to the comparator and table budgets."""
    if n < 2:
        return 0
    t = int(math.log(n) / math.log(2 * sigma) / 2)
    cbits = max(1, (sigma - 1).bit_length())
    while t > 0 and 2 * t * (1 + cbits) > min(w, _TABLE_KEY_BUDGET):
        t -= 1
    return min(t, w // 2)


def _block_dp(htop: tuple[int, ...], vleft: tuple[int, ...], xs, ys, t: int):
    """Scalar DP over one block; boundary differences in, boundary diffs out."""
    c = [[0] * (t + 1) for _ in range(t + 1)]
    for q in range(1, t + 1):
        c[0][q] = c[0][q - 1] + htop[q - 1]
    for p in range(1, t + 1):
        c[p][0] = c[p - 1][0] + vleft[p - 1]
    for p in range(1, t + 1):
        for q in range(1, t + 1):
            if xs[p - 1] == ys[q - 1]:
                c[p][q] = c[p - 1][q - 1] + 1
            else:
                c[p][q] = max(c[p - 1][q], c[p][q - 1])
    hbot = 0
    vright = 0
    for q in range(1, t + 1):
        d = c[t][q] - c[t][q - 1]
        assert d in (0, 1)
        hbot |= d << (q - 1)
    for p in range(1, t + 1):
        d = c[p][t] - c[p - 1][t]
        assert d in (0, 1)
        vright |= d << (p - 1)
    return hbot, vright


def _scalar_step(eq: int, h_above: int, v_left: int) -> tuple[int, int]:
    """One cell of the difference recurrence: returns (H, V)."""
    h = max(eq - v_left, 0, h_above - v_left)
    v = max(eq - h_above, 0, v_left - h_above)
    return h, v


def lcs_four_russians(machine: Machine, x, y, sigma: int) -> FourRussiansResult:
    xs, ys = encode_pair(x, y, sigma)
    m_len, n_len = len(xs), len(ys)
    if m_len == 0 or n_len == 0:
        return FourRussiansResult(0, False, 0, 0)
    t = block_side(max(m_len, n_len), sigma, machine.cfg.w)
    if t < 1:
        res = lcs_length(machine, xs, ys, sigma)
        return FourRussiansResult(res.length, True, 0, 0)
    m = machine
    cbits = max(1, (sigma - 1).bit_length())
    key_bits = 2 * t + 2 * t * cbits
    rows_b = m_len // t
    cols_b = n_len // t
    big_r, big_c = rows_b * t, cols_b * t
    k = m.cfg.k

    # precompute every block (setup: filled host-side, size reported)
    tbl = m.alloc(1 << key_bits)
    tmask = (1 << t) - 1
    for xsub in itertools.product(range(sigma), repeat=t):
        xkey = 0
        for i, s in enumerate(xsub):
            xkey |= s << (i * cbits)
        for ysub in itertools.product(range(sigma), repeat=t):
            ykey = 0
            for i, s in enumerate(ysub):
                ykey |= s << (i * cbits)
            for htop in range(1 << t):
                hbits = tuple((htop >> q) & 1 for q in range(t))
                for vleft in range(1 << t):
                    vbits = tuple((vleft >> p) & 1 for p in range(t))
                    hb, vr = _block_dp(hbits, vbits, xsub, ysub, t)
                    key = htop | vleft << t | xkey << 2 * t | ykey << (2 * t + t * cbits)
                    m.mem[tbl + key] = hb | vr << t

    hrow = m.alloc(cols_b + k)  # bottom H bits per block column (starts all zero)
    vcol = m.alloc(rows_b + k)  # right V bits per block row
    xcode = m.alloc(rows_b + k)
    ycode = m.alloc(cols_b + k)
    for bi in range(rows_b):
        v = 0
        for i in range(t):
            v |= xs[bi * t + i] << (i * cbits)
        m.mem[xcode + bi] = v
    for bj in range(cols_b):
        v = 0
        for j in range(t):
            v |= ys[bj * t + j] << (j * cbits)
        m.mem[ycode + bj] = v

    low_t = m.const_limbs([tmask] * k)
    ramp = m.const_limbs(list(range(k)))
    tbl_off = m.const_limbs([tbl] * k)
    for d in range(2, rows_b + cols_b + 1):
        j_lo = max(1, d - rows_b)
        j_hi = min(cols_b, d - 1)
        width = j_hi - j_lo + 1
        j = j_lo
        while j <= j_hi:
            cnt = min(k, j_hi - j + 1)
            if cnt == k:
                hw = m.read_word(hrow + j - 1)
                yw = m.read_word(ycode + j - 1)
                desc = m.w_sub(m.const_limbs([vcol + d - j - 1] * k), ramp)
                vw = m.read_content(desc, 0)
                xw = m.read_content(m.w_sub(m.const_limbs([xcode + d - j - 1] * k), ramp), 0)
                key = m.w_or(hw, m.shift_high(vw, t))
                key = m.w_or(key, m.shift_high(xw, 2 * t))
                key = m.w_or(key, m.shift_high(yw, 2 * t + t * cbits))
                out = m.read_content(m.w_add(key, tbl_off), 0)
                m.write_word(m.w_and(out, low_t), hrow + j - 1)
                m.write_content(m.w_and(m.shift_low(out, t), low_t), desc, 0)
            else:
                # remainder blocks of a short antidiagonal: scalar lookups
                for off in range(cnt):
                    jj = j + off
                    ii = d - jj
                    ht = m.load(hrow + jj - 1)
                    vl = m.load(vcol + ii - 1)
                    key = (
                        ht
                        | vl << t
                        | m.load(xcode + ii - 1) << 2 * t
                        | m.load(ycode + jj - 1) << (2 * t + t * cbits)
                    )
                    m.tick_scalar(4)
                    out = m.load(tbl + key)
                    m.store(hrow + jj - 1, out & tmask)
                    m.store(vcol + ii - 1, (out >> t) & tmask)
            j += cnt
        del width

    # stitch the unblocked margins with the scalar recurrence
    h_last = []  # H values on row big_r, columns 1..n
    for bj in range(cols_b):
        bits = m.load(hrow + bj)
        m.tick_scalar()
        h_last.extend((bits >> q) & 1 for q in range(t))
    v_at_c = [0]  # V values on column big_c, rows 0(pad), 1..big_r
    for bi in range(rows_b):
        bits = m.load(vcol + bi)
        m.tick_scalar()
        v_at_c.extend((bits >> p) & 1 for p in range(t))
    if big_c < n_len:
        v_run = list(v_at_c)
        for j in range(big_c + 1, n_len + 1):
            h_above = 0
            for i in range(1, big_r + 1):
                eq = 1 if xs[i - 1] == ys[j - 1] else 0
                h_here, v_here = _scalar_step(eq, h_above, v_run[i])
                m.tick_scalar(4)
                v_run[i] = v_here
                h_above = h_here
            h_last.append(h_above)
    if big_r < m_len:
        h_prev = [0] + list(h_last)  # H on row big_r, cols 0(pad), 1..n
        for i in range(big_r + 1, m_len + 1):
            v_left = 0
            row = [0] * (n_len + 1)
            for j in range(1, n_len + 1):
                eq = 1 if xs[i - 1] == ys[j - 1] else 0
                h_here, v_here = _scalar_step(eq, h_prev[j], v_left)
                m.tick_scalar(4)
                row[j] = h_here
                v_left = v_here
            h_prev = row
        length = sum(h_prev[1:])
    else:
        length = sum(h_last)
    m.tick_scalar(len(h_last))
    return FourRussiansResult(length, False, t, 1 << key_bits)


def four_russians_cells(x_len: int, y_len: int, sigma: int, cfg: WideConfig) -> int:
    """Memory budget for lcs_four_russians (table plus boundary arrays)."""
    t = block_side(max(x_len, y_len), sigma, cfg.w)
    if t < 1:
        # the fallback engine packs both strings
        f = max((sigma - 1).bit_length(), 2) + 1
        return (x_len + y_len) * f // cfg.w + 6 * cfg.k + 16
    cbits = max(1, (sigma - 1).bit_length())
    key_bits = 2 * t + 2 * t * cbits
    return (1 << key_bits) + 2 * ((x_len + y_len) // t) + 6 * cfg.k + 16


def four_russians_solve(x, y, sigma: int, cfg: WideConfig | None = None):
    cfg = cfg or WideConfig(64, 64)
    machine = Machine(cfg, four_russians_cells(len(x), len(y), sigma, cfg))
    return lcs_four_russians(machine, x, y, sigma), machine
