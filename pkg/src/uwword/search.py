"""Wide-word string matching: Shift-And / Shift-Or (two layouts) and BMH.

Shift-And simulates the (m+1)-state prefix-matching NFA with a bit vector:
state j-1 is live iff the last j text characters equal the pattern's first j.
The wide variant uses the whole wide word (or several) as the state vector,
so one update step covers k*w states. The parallel variant instead runs k
independent w-bit automata, one per block, each scanning its own text
segment; per step one gather fetches the k current characters and a second
gather fetches their mask-table rows, and matches are extracted with
compress plus a set-bit-positions table. Shift-Or is the complemented
encoding (live = 0) which saves the per-step OR with the initial state.

BMH keeps the classic last-character shift table but compares a whole window
segment per operation: text and pattern are packed at ceil(log2 sigma) bits
per symbol and a segment comparison is a single wide subtraction tested for
zero, scanned from the window's end backwards. Window positions advance
exactly as in the scalar algorithm.

The set-bit-positions helper is keyed on min(w/2, 16)-bit chunks (a full
w/2-bit key at w = 64 would not fit simulated memory); its construction is
charged separately from search work.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UwwordError
from .machine import Machine
from .wideword import WideWord

_SETBIT_KEY_BITS = 16


@dataclass
class SearchReport:
    occurrences: list[int]  # 1-based start positions, strictly increasing
    occ: int = field(init=False)
    window_trace: list[int] | None = None

    def __post_init__(self):
        self.occ = len(self.occurrences)
        for a, b in zip(self.occurrences, self.occurrences[1:]):
            if b <= a:
                raise UwwordError("occurrence list must be strictly increasing")


def encode_text_pair(text, pattern, sigma: int | None = None):
    """Symbol codes for (text, pattern) plus the effective alphabet size."""
    if isinstance(text, str) or isinstance(pattern, str):
        if not (isinstance(text, str) and isinstance(pattern, str)):
            raise UwwordError("mix of str and code-sequence inputs")
        alphabet = sorted(set(text) | set(pattern))
        if sigma is not None and len(alphabet) > sigma:
            raise UwwordError(f"inputs use {len(alphabet)} symbols, sigma={sigma}")
        code = {c: i for i, c in enumerate(alphabet)}
        return (
            [code[c] for c in text],
            [code[c] for c in pattern],
            sigma if sigma is not None else max(2, len(alphabet)),
        )
    if isinstance(text, (bytes, bytearray)) or isinstance(pattern, (bytes, bytearray)):
        ts, ps = list(text), list(pattern)
    else:
        ts, ps = list(text), list(pattern)
    sigma = sigma if sigma is not None else max(ts + ps, default=1) + 1
    for v in ts + ps:
        if not 0 <= v < sigma:
            raise UwwordError(f"symbol {v} out of range for sigma={sigma}")
    return ts, ps, sigma


def build_masks(pattern_codes: list[int], sigma: int) -> list[int]:
    """Per-symbol match masks: bit j-1 of masks[c] set iff pattern[j] == c."""
    if not pattern_codes:
        raise UwwordError("empty pattern")
    masks = [0] * (sigma + 1)  # one sentinel row, matching nothing
    for j, c in enumerate(pattern_codes):
        masks[c] |= 1 << j
    return masks


def _check_bit(m_pat: int, kw: int) -> tuple[int, int]:
    return (m_pat - 1) // kw, (m_pat - 1) % kw


def _shift_core(
    machine: Machine, ts: list[int], ps: list[int], sigma: int, complemented: bool
) -> SearchReport:
    """Shared engine for the whole-wide-word Shift-And / Shift-Or variants."""
    m = machine
    kw = m.cfg.total_bits
    n_len, m_pat = len(ts), len(ps)
    if m_pat == 0:
        raise UwwordError("empty pattern")
    if m_pat > n_len:
        return SearchReport([])
    swords = -(-m_pat // kw)
    k = m.cfg.k
    masks = build_masks(ps, sigma)
    y_base = m.alloc((sigma + 1) * swords * k)
    for c in range(sigma + 1):  # mask table residency is preprocessing
        row = masks[c] if c < sigma else 0
        if complemented:
            row ^= (1 << (swords * kw)) - 1
        for t in range(swords):
            part = (row >> (t * kw)) & m.cfg.word_mask
            for j in range(k):
                m.mem[y_base + (c * swords + t) * k + j] = (part >> (j * m.cfg.w)) & m.cfg.block_mask
    t_base = m.alloc(n_len + 1)
    for i, c in enumerate(ts):
        m.mem[t_base + i] = c
    cw, cb = _check_bit(m_pat, kw)
    check = m.const(1 << cb)
    one = m.const(1)
    full = m.const(m.cfg.word_mask)
    state = [full if complemented else m.zero() for _ in range(swords)]
    found: list[int] = []
    for i in range(1, n_len + 1):
        c = m.load(t_base + i - 1)
        carry = None
        for t in range(swords):
            nxt_carry = m.shift_low(state[t], kw - 1) if t + 1 < swords else None
            shifted = m.shift_high(state[t], 1)
            if t == 0:
                if not complemented:
                    shifted = m.w_or(shifted, one)
            elif carry is not None:
                shifted = m.w_or(shifted, carry)
            yrow = m.read_word(y_base + (c * swords + t) * k)
            if complemented:
                state[t] = m.w_or(shifted, yrow)
            else:
                state[t] = m.w_and(shifted, yrow)
            carry = nxt_carry
        hit_word = m.w_and(state[cw], check)
        live = m.is_nonzero(hit_word)
        if complemented:
            live = not live
        if live:
            found.append(i - m_pat + 1)
    return SearchReport(found)


def shift_and_wide(machine: Machine, text, pattern, sigma: int | None = None) -> SearchReport:
    ts, ps, sg = encode_text_pair(text, pattern, sigma)
    return _shift_core(machine, ts, ps, sg, complemented=False)


def _setbit_table(m: Machine, key_bits: int):
    """Set-bit-position table shared per machine; construction charged apart."""
    cache = getattr(m, "_setbit_tables", None)
    if cache is None:
        cache = {}
        m._setbit_tables = cache  # type: ignore[attr-defined]
    if key_bits not in cache:
        base = m.alloc(1 << key_bits)
        positions = []
        for v in range(1 << key_bits):
            m.mem[base + v] = v.bit_count()
            positions.append([j for j in range(key_bits) if (v >> j) & 1])
        cache[key_bits] = (base, positions)
    return cache[key_bits]


def _shift_parallel_core(
    machine: Machine, ts: list[int], ps: list[int], sigma: int, complemented: bool
) -> SearchReport:
    m = machine
    w, k = m.cfg.w, m.cfg.k
    n_len, m_pat = len(ts), len(ps)
    if m_pat == 0:
        raise UwwordError("empty pattern")
    if m_pat > w:
        raise UwwordError("pattern exceeds w bits; use the whole-word variant")
    if k > w:
        raise UwwordError("parallel variant needs k <= w to extract match words")
    if m_pat > n_len:
        return SearchReport([])
    nseg = -(-n_len // k)
    masks = build_masks(ps, sigma)
    wmask = m.cfg.block_mask
    y_base = m.alloc(sigma + 1)
    for c in range(sigma + 1):
        row = masks[c]
        m.mem[y_base + c] = (row ^ wmask) if complemented else row
    pad_to = k * nseg + m_pat - 1
    t_base = m.alloc(pad_to + 1)
    for i in range(pad_to):
        m.mem[t_base + i] = ts[i] if i < n_len else sigma  # sentinel padding
    scratch = m.alloc(1)
    key_bits = min(_SETBIT_KEY_BITS, max(k, 1))
    tbl_base, tbl_positions = _setbit_table(m, key_bits)
    ones01 = m.const(m.cfg.block_ones)
    not01 = m.const(m.cfg.word_mask ^ m.cfg.block_ones)
    check = m.const(m.cfg.block_ones << (m_pat - 1))
    not_check = m.const(m.cfg.word_mask ^ check.value)
    y_off = m.const_limbs([y_base] * k)
    addr = m.const_limbs([t_base + j * nseg for j in range(k)])
    state = m.const(m.cfg.word_mask) if complemented else m.zero()
    found: list[int] = []
    for step in range(1, nseg + m_pat):
        shifted = m.shift_high(state, 1)
        if complemented:
            v1 = m.w_and(shifted, not01)
        else:
            v1 = m.w_or(shifted, ones01)
        chars = m.read_content(addr, 0)
        rows = m.read_content(m.w_add(chars, y_off), 0)
        state = (m.w_or if complemented else m.w_and)(v1, rows)
        if complemented:
            hits = m.w_and(m.w_not(state), check)
        else:
            hits = m.w_and(state, check)
        if m.is_nonzero(hits):
            packed = m.compress(m.shift_low(hits, m_pat - 1))
            m.write_block(packed, 0, scratch)
            bits = m.load(scratch)
            base_block = 0
            while bits:
                chunk = bits & ((1 << key_bits) - 1)
                m.tick_scalar()  # chunk extraction
                if chunk:
                    m.load(tbl_base + chunk)  # position-table lookup
                    for j in tbl_positions[chunk]:
                        blk = base_block + j
                        start = blk * nseg + step - m_pat + 1
                        m.tick_scalar()
                        found.append(start)
                bits >>= key_bits
                base_block += key_bits
        # retire the accept states so the top bit never crosses a block
        if complemented:
            state = m.w_or(state, check)
        else:
            state = m.w_and(state, not_check)
        addr = m.w_add(addr, ones01)
    found.sort()
    return SearchReport(found)


def shift_and_parallel(machine: Machine, text, pattern, sigma: int | None = None) -> SearchReport:
    ts, ps, sg = encode_text_pair(text, pattern, sigma)
    return _shift_parallel_core(machine, ts, ps, sg, complemented=False)


def shift_or(
    machine: Machine, text, pattern, sigma: int | None = None, variant: str = "wide"
) -> SearchReport:
    """Complemented-state matcher; variant is 'wide' or 'parallel'."""
    ts, ps, sg = encode_text_pair(text, pattern, sigma)
    if variant == "wide":
        return _shift_core(machine, ts, ps, sg, complemented=True)
    if variant == "parallel":
        return _shift_parallel_core(machine, ts, ps, sg, complemented=True)
    raise ValueError(f"unknown variant {variant!r}")


def build_jump_table(ps: list[int], sigma: int) -> list[int]:
    m_pat = len(ps)
    jump = [m_pat] * sigma
    for j in range(1, m_pat):  # positions 1..m-1, last char excluded
        jump[ps[j - 1]] = m_pat - j
    return jump


def _load_packed(m: Machine, base: int, bit_off: int, nbits: int) -> WideWord:
    """nbits of a packed array starting at bit_off, low-aligned and masked."""
    kw = m.cfg.total_bits
    c0, s0 = divmod(bit_off, m.cfg.w)
    word = m.read_word(base + c0)
    if s0:
        word = m.shift_low(word, s0)
        if s0 + nbits > kw:
            word = m.w_or(word, m.shift_high(m.read_word(base + c0 + m.cfg.k), kw - s0))
    return m.w_and(word, m.const((1 << nbits) - 1))


def bmh_wide(machine: Machine, text, pattern, sigma: int | None = None) -> SearchReport:
    """Boyer-Moore-Horspool with whole-segment wide comparisons."""
    m = machine
    ts, ps, sg = encode_text_pair(text, pattern, sigma)
    n_len, m_pat = len(ts), len(ps)
    if m_pat == 0:
        raise UwwordError("empty pattern")
    if m_pat > n_len:
        return SearchReport([], window_trace=[])
    cbits = max(1, (sg - 1).bit_length())
    kw = m.cfg.total_bits
    m_prime = kw // cbits  # symbols comparable per wide word
    nseg = -(-m_pat // m_prime)
    k = m.cfg.k

    def pack(codes: list[int]) -> int:
        cells = (len(codes) * cbits + m.cfg.w - 1) // m.cfg.w + 1
        base = m.alloc(cells + k)
        for p, c in enumerate(codes):
            bit = p * cbits
            m.mem[base + bit // m.cfg.w] |= (c << (bit % m.cfg.w)) & m.cfg.block_mask
            spill = c >> (m.cfg.w - bit % m.cfg.w) if bit % m.cfg.w else 0
            if spill:
                m.mem[base + bit // m.cfg.w + 1] |= spill
        return base

    t_base = pack(ts)
    p_base = pack(ps)
    jump = build_jump_table(ps, sg)
    j_base = m.alloc(sg)
    for c, v in enumerate(jump):
        m.mem[j_base + c] = v
    # pattern segments are fixed; load them once (charged once)
    pat_words = []
    for r in range(nseg):
        lo = r * m_prime
        cnt = min(m_prime, m_pat - lo)
        pat_words.append(_load_packed(m, p_base, lo * cbits, cnt * cbits))
    trace: list[int] = []
    found: list[int] = []
    i = 0
    while i <= n_len - m_pat:
        trace.append(i + 1)
        for r in range(nseg - 1, -1, -1):
            lo = r * m_prime
            cnt = min(m_prime, m_pat - lo)
            tw = _load_packed(m, t_base, (i + lo) * cbits, cnt * cbits)
            if m.is_nonzero(m.w_sub(tw, pat_words[r])):
                break
            if r == 0:
                found.append(i + 1)
        pos = i + m_pat - 1  # character under the window's last position
        bit = pos * cbits
        cell = m.load(t_base + bit // m.cfg.w)
        c = (cell >> (bit % m.cfg.w)) & ((1 << cbits) - 1)
        if bit % m.cfg.w + cbits > m.cfg.w:
            hi = m.load(t_base + bit // m.cfg.w + 1)
            c |= (hi << (m.cfg.w - bit % m.cfg.w)) & ((1 << cbits) - 1)
        m.tick_scalar(2)
        i += m.load(j_base + c)
    return SearchReport(found, window_trace=trace)


ALGORITHMS = ("shift-and", "shift-and-parallel", "shift-or", "shift-or-parallel", "bmh")


def search_cells(n_len: int, m_pat: int, sigma: int, algo: str, cfg) -> int:
    kw = cfg.total_bits
    if algo in ("shift-and", "shift-or"):
        swords = max(1, -(-m_pat // kw))
        return (sigma + 1) * swords * cfg.k + n_len + 2 * cfg.k + 16
    if algo in ("shift-and-parallel", "shift-or-parallel"):
        nseg = max(1, -(-n_len // cfg.k))
        key_bits = min(_SETBIT_KEY_BITS, max(cfg.k, 1))
        return (sigma + 1) + cfg.k * nseg + m_pat + (1 << key_bits) + 2 * cfg.k + 16
    if algo == "bmh":
        cbits = max(1, (sigma - 1).bit_length())
        packed = -(-(n_len + m_pat) * cbits // cfg.w)
        return packed + sigma + 6 * cfg.k + 16
    raise ValueError(f"unknown algorithm {algo!r}")


def run_search(machine: Machine, algo: str, text, pattern, sigma: int | None = None) -> SearchReport:
    """Dispatch over the four matchers by CLI-facing algorithm name."""
    if algo == "shift-and":
        return shift_and_wide(machine, text, pattern, sigma)
    if algo == "shift-and-parallel":
        return shift_and_parallel(machine, text, pattern, sigma)
    if algo == "shift-or":
        return shift_or(machine, text, pattern, sigma, variant="wide")
    if algo == "shift-or-parallel":
        return shift_or(machine, text, pattern, sigma, variant="parallel")
    if algo == "bmh":
        return bmh_wide(machine, text, pattern, sigma)
    raise ValueError(f"unknown algorithm {algo!r}")


def search_solve(algo: str, text, pattern, sigma: int | None = None, cfg=None):
    from .wideword import WideConfig

    cfg = cfg or WideConfig(64, 64)
    ts, ps, sg = encode_text_pair(text, pattern, sigma)
    machine = Machine(cfg, search_cells(len(ts), len(ps), sg, algo, cfg))
    return run_search(machine, algo, ts, ps, sg), machine
