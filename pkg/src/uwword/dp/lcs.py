"""Longest common subsequence by difference diagonals in f-bit fields.

Instead of DP cell values, the engine keeps the horizontal and vertical
difference tables H and V (entries 0/1): H[i,j] = c[i,j] - c[i,j-1] and
V[i,j] = c[i,j] - c[i-1,j]. One antidiagonal of each is packed into f-bit
fields of wide words, f = max(ceil(log2 sigma), 2) + 1: room for a symbol, a
transient -1 in two's complement, and a test bit. A diagonal step is a
handful of fieldwise subtractions and maxima:

    eq    = [x_i = y_j] per field (subtract symbols, flag zero fields)
    H_k   = max(eq - V_{k-1}, H_{k-1} - V_{k-1}, 0)
    V_k   = max(eq - H_{k-1}, V_{k-1} - H_{k-1}, 0)

with base-case fields entering at the high end of H (automatically zero) and
at the low end of V (a one-field shift), and the LCS length accumulating from
field 0 of H once diagonals reach the last row. Only four diagonals are live
unless full retention is requested for traceback.

One string is stored reversed so every diagonal's symbols of both strings
load as contiguous packed spans.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UwwordError
from ..machine import Machine
from ..wideword import FieldLayout, WideWord

Symbols = list[int]


def encode_pair(x, y, sigma: int) -> tuple[Symbols, Symbols]:
    """Code sequences for a string pair; str inputs share one sorted alphabet."""
    if isinstance(x, str) or isinstance(y, str):
        if not (isinstance(x, str) and isinstance(y, str)):
            raise UwwordError("mix of str and code-sequence inputs")
        alphabet = sorted(set(x) | set(y))
        if len(alphabet) > sigma:
            raise UwwordError(f"strings use {len(alphabet)} symbols, sigma={sigma}")
        code = {c: i for i, c in enumerate(alphabet)}
        return [code[c] for c in x], [code[c] for c in y]
    out = []
    for s in (x, y):
        seq = list(s)
        for v in seq:
            if not 0 <= v < sigma:
                raise UwwordError(f"symbol {v} out of range for sigma={sigma}")
        out.append(seq)
    return out[0], out[1]


def _field_bits(sigma: int) -> int:
    need = max((sigma - 1).bit_length(), 2)
    return need + 1


@dataclass
class _DiagState:
    j_base: int  # column of field 0
    n_fields: int
    words: list[WideWord]


@dataclass
class LcsResult:
    length: int
    field_bits: int
    retained_h: dict[int, _DiagState] | None = None
    retained_v: dict[int, _DiagState] | None = None

    @property
    def retained_words(self) -> int:
        """Wide words held for traceback (memory accounting)."""
        if self.retained_h is None:
            return 0
        total = sum(len(d.words) for d in self.retained_h.values())
        total += sum(len(d.words) for d in self.retained_v.values())
        return total

    def h_fields(self, k: int) -> list[int]:
        """Payloads of diagonal H_k in increasing column order."""
        return self._fields(self.retained_h, k)

    def v_fields(self, k: int) -> list[int]:
        return self._fields(self.retained_v, k)

    def _fields(self, table, k: int) -> list[int]:
        if table is None:
            raise UwwordError("diagonals were not retained; rerun with keep_diagonals")
        d = table[k]
        f = self.field_bits
        ell = d.words[0].cfg.total_bits // f if d.words else 0
        out = []
        for idx in range(d.n_fields):
            word = d.words[idx // ell]
            out.append((word.value >> ((idx % ell) * f)) & ((1 << (f - 1)) - 1))
        return out


class _Engine:
    def __init__(self, machine: Machine, xs: Symbols, ys: Symbols, sigma: int):
        self.m = machine
        self.xs = xs
        self.ys = ys
        self.f = _field_bits(sigma)
        cfg = machine.cfg
        self.ell = cfg.total_bits // self.f
        if self.ell < 1:
            raise UwwordError("field width exceeds the wide word")
        used = self.ell * self.f
        self.t_const = machine.const(self._per_field(1 << (self.f - 1)))
        self.not_t = machine.const(cfg.word_mask ^ self.t_const.value)
        self.zone = (1 << used) - 1
        self.x_base = self._pack([*reversed(xs)])
        self.y_base = self._pack(ys)

    def _per_field(self, v: int) -> int:
        out = 0
        for i in range(self.ell):
            out |= v << (i * self.f)
        return out

    def _pack(self, syms: Symbols) -> int:
        m = self.m
        w = m.cfg.w
        n_cells = -(-(len(syms) * self.f) // w) + 1
        base = m.alloc(n_cells + m.cfg.k)
        for p, s in enumerate(syms):  # input packing is setup
            bit = p * self.f
            m.mem[base + bit // w] |= (s << (bit % w)) & ((1 << w) - 1)
            spill = s >> (w - bit % w) if bit % w else 0
            if spill:
                m.mem[base + bit // w + 1] |= spill
        return base

    def _load_span(self, base: int, first_field: int, n_fields: int) -> list[WideWord]:
        """Packed fields [first_field, first_field + n_fields) as word list."""
        m = self.m
        kw = m.cfg.total_bits
        out = []
        n_words = -(-n_fields // self.ell) if n_fields else 0
        for t in range(n_words):
            gp = (first_field + t * self.ell) * self.f
            c0, s0 = divmod(gp, m.cfg.w)
            word = m.shift_low(m.read_word(base + c0), s0) if s0 else m.read_word(base + c0)
            if s0:
                hi = m.read_word(base + c0 + m.cfg.k)
                word = m.w_or(word, m.shift_high(hi, kw - s0))
            fields_here = min(self.ell, n_fields - t * self.ell)
            word = m.w_and(word, m.const((1 << (fields_here * self.f)) - 1))
            out.append(word)
        return out

    def _zeros(self, n_words: int) -> list[WideWord]:
        return [self.m.zero()] * n_words

    def _pad(self, words: list[WideWord], n_words: int) -> list[WideWord]:
        return words + self._zeros(n_words - len(words))

    def _fsub(self, a: list[WideWord], b: list[WideWord]) -> list[WideWord]:
        """Fieldwise a - b into (f-1)-bit two's complement payloads."""
        m = self.m
        return [
            m.w_and(m.w_sub(m.w_or(x, self.t_const), y), self.not_t)
            for x, y in zip(a, b)
        ]

    def _max3(self, a: list[WideWord], b: list[WideWord], layout) -> list[WideWord]:
        m = self.m
        zero = m.zero()
        return [
            m.field_max(m.field_max(x, y, layout, signed=True), zero, layout, signed=True)
            for x, y in zip(a, b)
        ]

    def _eq_word(self, wx: WideWord, wy: WideWord, used_mask: int) -> WideWord:
        m = self.m
        d = m.w_and(m.w_sub(m.w_or(wx, self.t_const), wy), self.not_t)
        e = m.w_and(m.w_sub(self.t_const, d), self.t_const)
        return m.w_and(m.shift_low(e, self.f - 1), m.const(used_mask))

    def _shift_stream_low(self, words: list[WideWord]) -> list[WideWord]:
        """Drop field 0; every field moves down one slot across words."""
        m = self.m
        f0 = m.const((1 << self.f) - 1)
        out = []
        for t, w in enumerate(words):
            shifted = m.shift_low(w, self.f)
            if t + 1 < len(words):
                carry = m.shift_high(m.w_and(words[t + 1], f0), (self.ell - 1) * self.f)
                shifted = m.w_or(shifted, carry)
            out.append(shifted)
        return out

    def _shift_stream_high(self, words: list[WideWord], n_words: int) -> list[WideWord]:
        """Insert a zero field at slot 0; fields move up one slot across words."""
        m = self.m
        top = m.const(((1 << self.f) - 1) << ((self.ell - 1) * self.f))
        zone = m.const(self.zone)
        out = []
        for t in range(n_words):
            w = words[t] if t < len(words) else None
            shifted = m.w_and(m.shift_high(w, self.f), zone) if w is not None else None
            if t > 0:
                carry = m.shift_low(m.w_and(words[t - 1], top), (self.ell - 1) * self.f)
                shifted = m.w_or(shifted, carry) if shifted is not None else carry
            out.append(shifted if shifted is not None else m.zero())
        return out

    def run(self, keep: bool) -> LcsResult:
        m = self.m
        m_len, n_len = len(self.xs), len(self.ys)
        if m_len == 0 or n_len == 0:
            return LcsResult(0, self.f, {} if keep else None, {} if keep else None)
        layout = FieldLayout(self.f, m.cfg.total_bits)
        h_prev = _DiagState(1, 1, [m.zero()])  # H_1 = [H_{0,1}] = [0]
        v_prev = _DiagState(0, 1, [m.zero()])  # V_1 = [V_{1,0}] = [0]
        ret_h = {1: h_prev} if keep else None
        ret_v = {1: v_prev} if keep else None
        length = 0
        for k in range(2, m_len + n_len + 1):
            j1 = max(1, k - m_len)
            j2 = min(n_len, k - 1)
            ncells = j2 - j1 + 1
            nf_h = ncells + (1 if k <= n_len else 0)
            nf_v = ncells + (1 if k <= m_len else 0)
            s = -(-max(nf_h, nf_v, ncells) // self.ell)
            i2 = k - j1
            wx = self._pad(self._load_span(self.x_base, m_len - i2, ncells), s)
            wy = self._pad(self._load_span(self.y_base, j1 - 1, ncells), s)
            used = [0] * s
            for idx in range(ncells):
                used[idx // self.ell] |= ((1 << self.f) - 1) << ((idx % self.ell) * self.f)
            weq = [self._eq_word(a, b, u) for a, b, u in zip(wx, wy, used)]
            hp = self._pad(h_prev.words, s)
            if h_prev.j_base != j1:  # columns advanced: drop H_{k-1}'s first field
                hp = self._shift_stream_low(hp)
            vp = self._pad(v_prev.words, s)
            w1 = self._fsub(weq, vp)
            w2 = self._fsub(hp, vp)
            hk = self._max3(w1, w2, layout)
            w1v = self._fsub(weq, hp)
            w2v = self._fsub(vp, hp)
            vk = self._max3(w1v, w2v, layout)
            if k <= m_len:  # base field V_{k,0} enters at the low end
                vk = self._shift_stream_high(vk, -(-nf_v // self.ell))
            h_cur = _DiagState(j1, nf_h, hk[: max(1, -(-nf_h // self.ell))])
            v_cur = _DiagState(j1 - 1 if k <= m_len else j1, nf_v,
                               vk[: max(1, -(-nf_v // self.ell))])
            if k >= m_len + 1:
                m.tick_scalar(2)
                length += hk[0].value & ((1 << (self.f - 1)) - 1)
            if keep:
                ret_h[k] = h_cur
                ret_v[k] = v_cur
            h_prev, v_prev = h_cur, v_cur
        return LcsResult(length, self.f, ret_h, ret_v)


def lcs_length(
    machine: Machine, x, y, sigma: int, keep_diagonals: bool = False
) -> LcsResult:
    """LCS length of x and y over an alphabet of size sigma."""
    xs, ys = encode_pair(x, y, sigma)
    return _Engine(machine, xs, ys, sigma).run(keep_diagonals)


def lcs_cells(x_len: int, y_len: int, sigma: int, cfg) -> int:
    """Machine-memory budget for one lcs_length/lcs_recover run."""
    f = _field_bits(sigma)
    packed = -(-(x_len + y_len) * f // cfg.w)
    return packed + 6 * cfg.k + 16


def lcs_solve(x, y, sigma: int, cfg=None, keep_diagonals: bool = False):
    from ..wideword import WideConfig

    cfg = cfg or WideConfig(64, 64)
    machine = Machine(cfg, lcs_cells(len(x), len(y), sigma, cfg))
    return lcs_length(machine, x, y, sigma, keep_diagonals), machine


def _field_at(result: LcsResult, table, k: int, j: int) -> int:
    d = table[k]
    idx = j - d.j_base
    f = result.field_bits
    ell = d.words[0].cfg.total_bits // f
    word = d.words[idx // ell]
    return (word.value >> ((idx % ell) * f)) & ((1 << (f - 1)) - 1)


def lcs_recover(machine: Machine, x, y, sigma: int, result: LcsResult | None = None):
    """One maximal common subsequence, walked back over retained diagonals.

    Returns (subsequence as the same type as x, LcsResult). The walk follows
    matches diagonally; otherwise a horizontal difference of 1 steps up and
    a vertical difference of 1 steps left.
    """
    xs, ys = encode_pair(x, y, sigma)
    if result is None or result.retained_h is None:
        result = _Engine(machine, xs, ys, sigma).run(True)
    i, j = len(xs), len(ys)
    taken: list[int] = []
    while i > 0 and j > 0:
        machine.tick_scalar(2)
        if xs[i - 1] == ys[j - 1]:
            taken.append(i - 1)
            i, j = i - 1, j - 1
            continue
        if _field_at(result, result.retained_h, i + j, j) == 1:
            i -= 1
        else:
            j -= 1
    taken.reverse()
    if isinstance(x, str):
        return "".join(x[p] for p in taken), result
    return [xs[p] for p in taken], result
