import random

import pytest

import uwword as uw
from uwword.wideword import FieldLayout


def rand_word(rng, cfg):
    return uw.wide_from_value(cfg, rng.getrandbits(cfg.total_bits))


class TestConstruction:
    def test_empty_limbs_is_zero(self):
        cfg = uw.WideConfig(8, 4)
        assert uw.wide_from_limbs(cfg, []).value == 0

    def test_positional_weight(self):
        cfg = uw.WideConfig(8, 4)
        assert uw.wide_from_limbs(cfg, [1, 2]).value == 1 + 2 * 2**8 == 513

    def test_all_ones(self):
        cfg = uw.WideConfig(8, 4)
        assert uw.wide_from_limbs(cfg, [255] * 4).value == 2**32 - 1

    def test_too_many_limbs(self):
        with pytest.raises(ValueError):
            uw.wide_from_limbs(uw.WideConfig(8, 2), [1, 2, 3])

    def test_limb_out_of_range(self):
        with pytest.raises(ValueError):
            uw.wide_from_limbs(uw.WideConfig(8, 2), [256])

    def test_bad_config(self):
        with pytest.raises(ValueError):
            uw.WideConfig(12, 4)
        with pytest.raises(ValueError):
            uw.WideConfig(8, 0)


class TestBitwise:
    def test_and_annihilator(self, cfg, rng):
        w = rand_word(rng, cfg)
        assert uw.wide_and(w, uw.wide_zero(cfg)).value == 0

    def test_or_identity(self, cfg, rng):
        w = rand_word(rng, cfg)
        assert uw.wide_or(w, uw.wide_zero(cfg)).value == w.value

    def test_not_zero(self):
        cfg = uw.WideConfig(8, 2)
        assert uw.wide_not(uw.wide_zero(cfg)).value == 2**16 - 1

    def test_config_mismatch(self):
        a = uw.wide_zero(uw.WideConfig(8, 2))
        b = uw.wide_zero(uw.WideConfig(8, 4))
        with pytest.raises(uw.ConfigMismatch):
            uw.wide_and(a, b)


class TestArith:
    def test_add_identity(self, cfg, rng):
        w = rand_word(rng, cfg)
        assert uw.wide_add(w, uw.wide_zero(cfg)).value == w.value

    def test_carry_crosses_blocks(self):
        cfg = uw.WideConfig(8, 2)
        a = uw.wide_from_limbs(cfg, [255, 0])
        b = uw.wide_from_limbs(cfg, [1, 0])
        assert uw.wide_add(a, b).limbs() == [0, 1]

    def test_sub_wraps(self):
        cfg = uw.WideConfig(8, 2)
        b = uw.wide_from_limbs(cfg, [1, 0])
        assert uw.wide_sub(uw.wide_zero(cfg), b).value == 2**16 - 1

    def test_matches_bignum_mod(self, cfg, rng):
        mod = 1 << cfg.total_bits
        for _ in range(400):
            x, y = rng.getrandbits(cfg.total_bits), rng.getrandbits(cfg.total_bits)
            a, b = uw.wide_from_value(cfg, x), uw.wide_from_value(cfg, y)
            assert uw.wide_add(a, b).value == (x + y) % mod
            assert uw.wide_sub(a, b).value == (x - y) % mod


class TestShift:
    def test_zero_shift_identity(self, cfg, rng):
        w = rand_word(rng, cfg)
        assert uw.shift_to_high(w, 0).value == w.value

    def test_bit_crosses_block(self):
        cfg = uw.WideConfig(8, 2)
        w = uw.wide_from_limbs(cfg, [128, 0])
        assert uw.shift_to_high(w, 1).limbs() == [0, 1]
        assert uw.shift_to_low(uw.wide_from_limbs(cfg, [0, 1]), 8).limbs() == [1, 0]

    def test_matches_bignum(self, cfg, rng):
        mod = 1 << cfg.total_bits
        for _ in range(300):
            x = rng.getrandbits(cfg.total_bits)
            i = rng.randint(0, cfg.total_bits)
            w = uw.wide_from_value(cfg, x)
            assert uw.shift_to_high(w, i).value == (x << i) % mod
            assert uw.shift_to_low(w, i).value == x >> i

    def test_range(self, cfg):
        with pytest.raises(ValueError):
            uw.shift_to_high(uw.wide_zero(cfg), cfg.total_bits + 1)


class TestCompressSpread:
    def test_zero(self, cfg):
        assert uw.compress(uw.wide_zero(cfg)).value == 0
        assert uw.spread(uw.wide_zero(cfg)).value == 0

    def test_blocks_0_and_2(self):
        cfg = uw.WideConfig(8, 4)
        a = uw.WideWord(cfg, (1 << 0) | (1 << 16))
        assert uw.compress(a).value == 0b101 == 5

    def test_all_blocks(self):
        cfg = uw.WideConfig(8, 4)
        a = uw.WideWord(cfg, sum(1 << (8 * j) for j in range(4)))
        assert uw.compress(a).value == 15

    def test_spread_of_five(self):
        cfg = uw.WideConfig(8, 4)
        got = uw.spread(uw.WideWord(cfg, 5))
        assert got.limbs() == [1, 0, 1, 0]

    def test_inverse_pair_exhaustive_small(self):
        for k in (1, 2, 4, 8, 16):
            cfg = uw.WideConfig(8, k)
            for bits in range(1 << k):
                a = uw.WideWord(cfg, sum(((bits >> j) & 1) << (8 * j) for j in range(k)))
                assert uw.spread(uw.compress(a)).value == a.value
                b = uw.WideWord(cfg, bits)
                assert uw.compress(uw.spread(b)).value == b.value

    def test_strict_mode_faults(self):
        cfg = uw.WideConfig(8, 4)
        with pytest.raises(uw.PreconditionError):
            uw.compress(uw.WideWord(cfg, 0b10))
        with pytest.raises(uw.PreconditionError):
            uw.spread(uw.WideWord(cfg, 1 << 8))
        # permissive mode masks instead
        assert uw.compress(uw.WideWord(cfg, 0b11), strict=False).value == 1


def scalar_ge_fields(layout, fv, gv):
    out = []
    for i in range(layout.count):
        f = (fv >> (i * layout.f)) & ((1 << (layout.f - 1)) - 1)
        g = (gv >> (i * layout.f)) & ((1 << (layout.f - 1)) - 1)
        out.append(f >= g)
    return out


class TestFieldOps:
    def test_reflexive(self):
        cfg = uw.WideConfig(8, 4)
        lay = FieldLayout(4, 32)
        f = uw.WideWord(cfg, lay.pack([3, 1, 7, 0]))
        mask = uw.field_ge_mask(f, f, lay)
        assert lay.unpack(mask.value) == [7] * lay.count

    def test_examples(self):
        cfg = uw.WideConfig(8, 4)
        lay = FieldLayout(4, 32)
        f = uw.WideWord(cfg, lay.pack([5, 2]))
        g = uw.WideWord(cfg, lay.pack([3, 4]))
        mask = uw.field_ge_mask(f, g, lay)
        assert [p == 7 for p in lay.unpack(mask.value)[:2]] == [True, False]
        f2 = uw.WideWord(cfg, lay.pack([0, 0]))
        g2 = uw.WideWord(cfg, lay.pack([1, 0]))
        mask2 = uw.field_ge_mask(f2, g2, lay)
        assert [p == 7 for p in lay.unpack(mask2.value)[:2]] == [False, True]
        assert mask.value & lay.test_bits == 0

    def test_max_examples(self):
        cfg = uw.WideConfig(8, 4)
        lay = FieldLayout(4, 32)
        f = uw.WideWord(cfg, lay.pack([5, 2]))
        g = uw.WideWord(cfg, lay.pack([3, 4]))
        assert lay.unpack(uw.field_max(f, g, lay).value)[:2] == [5, 4]
        assert uw.field_max(f, f, lay).value == f.value

    def test_signed_max(self):
        cfg = uw.WideConfig(8, 4)
        lay = FieldLayout(3, 32)
        f = uw.WideWord(cfg, lay.pack([1, -1], signed=True))
        g = uw.WideWord(cfg, lay.pack([0, 0], signed=True))
        assert lay.unpack(uw.field_max(f, g, lay, signed=True).value, signed=True)[:2] == [1, 0]

    def test_ge_random_against_scalar(self, cfg, rng):
        for _ in range(300):
            f_bits = rng.choice([3, 4, 5, 8])
            if f_bits > cfg.total_bits:
                continue
            lay = FieldLayout(f_bits, cfg.total_bits)
            half = 1 << (f_bits - 1)
            fv = lay.pack([rng.randrange(half) for _ in range(lay.count)])
            gv = lay.pack([rng.randrange(half) for _ in range(lay.count)])
            mask = uw.field_ge_mask(uw.WideWord(cfg, fv), uw.WideWord(cfg, gv), lay)
            want = scalar_ge_fields(lay, fv, gv)
            got = [(mask.value >> (i * f_bits)) & (half - 1) == half - 1 for i in range(lay.count)]
            assert got == want
            assert mask.value & lay.test_bits == 0

    def test_max_random_both_signedness(self, cfg, rng):
        for _ in range(200):
            f_bits = rng.choice([3, 4, 6])
            if f_bits > cfg.total_bits:
                continue
            lay = FieldLayout(f_bits, cfg.total_bits)
            half = 1 << (f_bits - 1)
            for signed in (False, True):
                lo, hi = (-(half // 2), half // 2) if signed else (0, half)
                fs = [rng.randrange(lo, hi) for _ in range(lay.count)]
                gs = [rng.randrange(lo, hi) for _ in range(lay.count)]
                fw = uw.WideWord(cfg, lay.pack(fs, signed=signed))
                gw = uw.WideWord(cfg, lay.pack(gs, signed=signed))
                got = lay.unpack(uw.field_max(fw, gw, lay, signed=signed).value, signed=signed)
                assert got == [max(a, b) for a, b in zip(fs, gs)]

    def test_strict_test_bit_fault(self):
        cfg = uw.WideConfig(8, 4)
        lay = FieldLayout(4, 32)
        bad = uw.WideWord(cfg, lay.test_bits)
        with pytest.raises(uw.PreconditionError):
            uw.field_ge_mask(bad, uw.wide_zero(cfg), lay)

    def test_unused_high_bits_stay_zero(self, rng):
        cfg = uw.WideConfig(8, 4)
        lay = FieldLayout(5, 32)  # 6 fields, 2 leftover bits
        used = lay.count * lay.f
        for _ in range(100):
            fv = lay.pack([rng.randrange(16) for _ in range(lay.count)])
            gv = lay.pack([rng.randrange(16) for _ in range(lay.count)])
            out = uw.field_max(uw.WideWord(cfg, fv), uw.WideWord(cfg, gv), lay)
            assert out.value >> used == 0


def test_random_ops_leave_width(cfg, rng):
    for _ in range(200):
        a, b = rand_word(rng, cfg), rand_word(rng, cfg)
        for out in (uw.wide_add(a, b), uw.wide_sub(a, b), uw.wide_xor(a, b),
                    uw.shift_to_high(a, 3)):
            assert 0 <= out.value <= cfg.word_mask
