import random

import pytest

import uwword as uw
from uwword.fsram import FsRam, FsRamLayout, format_layout_text, parse_layout_text, yggdrasil_layout


def machine_for(layout, cfg=None):
    cfg = cfg or uw.WideConfig(64, 64)
    cells = layout.r * cfg.k + layout.n_bits + cfg.k + 8
    return uw.Machine(cfg, cells)


class TestYggdrasilLayout:
    def test_depth4_register3(self):
        # register 3's path names heap nodes 11, 5, 2, 1 (stored ids minus one)
        lay = yggdrasil_layout(4)
        assert [i + 1 for i in lay.table[3]] == [11, 5, 2, 1]
        assert lay.r == 8 and lay.b == 4 and lay.n_bits == 15

    def test_formula_all_registers(self):
        depth = 5
        lay = yggdrasil_layout(depth)
        for i in range(lay.r):
            for j in range(depth):
                assert lay.table[i][j] + 1 == (i >> j) + (1 << (depth - j - 1))

    def test_root_shared_by_all(self):
        lay = yggdrasil_layout(4)
        assert all(row[-1] == 0 for row in lay.table)


class TestLayoutValidation:
    def test_duplicate_id_in_row_rejected(self):
        with pytest.raises(ValueError):
            FsRamLayout(r=1, b=2, n_bits=4, table=((1, 1),))

    def test_id_out_of_range(self):
        with pytest.raises(ValueError):
            FsRamLayout(r=1, b=2, n_bits=2, table=((0, 2),))

    def test_text_roundtrip(self):
        lay = yggdrasil_layout(3)
        again = parse_layout_text(format_layout_text(lay))
        assert again == lay

    def test_text_errors(self):
        with pytest.raises(ValueError):
            parse_layout_text("1 2")
        with pytest.raises(ValueError):
            parse_layout_text("1 2 4\n0")
        with pytest.raises(ValueError):
            parse_layout_text("1 2 4\n0 x")


class TestReadWrite:
    def test_zero_store_reads_zero(self):
        lay = yggdrasil_layout(4)
        fs = FsRam(machine_for(lay), lay)
        assert all(fs.read(t) == 0 for t in range(lay.r))

    def test_shared_bit_visibility(self):
        lay = yggdrasil_layout(4)
        fs = FsRam(machine_for(lay), lay)
        fs.poke_bit(4, 1)  # heap node 5 sits on the paths of registers 2 and 3
        assert (fs.read(3) >> 1) & 1 == 1
        assert (fs.read(2) >> 1) & 1 == 1

    def test_write_read_roundtrip(self, rng):
        lay = yggdrasil_layout(4)
        fs = FsRam(machine_for(lay), lay)
        for _ in range(50):
            t = rng.randrange(lay.r)
            v = rng.randrange(1 << lay.b)
            fs.write(t, v)
            assert fs.read(t) == v

    def test_root_write_everywhere(self):
        lay = yggdrasil_layout(4)
        fs = FsRam(machine_for(lay), lay)
        fs.write(0, 1 << 3)
        assert all((fs.read(t) >> 3) & 1 == 1 for t in range(lay.r))

    def test_write_zero_clears_only_own_path(self):
        lay = yggdrasil_layout(4)
        fs = FsRam(machine_for(lay), lay)
        for i in range(lay.n_bits):
            fs.poke_bit(i, 1)
        fs.write(5, 0)
        cleared = set(lay.table[5])
        for i in range(lay.n_bits):
            assert fs.peek_bit(i) == (0 if i in cleared else 1)

    def test_register_out_of_range(self):
        lay = yggdrasil_layout(3)
        fs = FsRam(machine_for(lay), lay)
        with pytest.raises(uw.MemoryFault):
            fs.read(lay.r)
        with pytest.raises(uw.MemoryFault):
            fs.write(lay.r, 0)


class TestConstantCost:
    def test_exact_primitive_counts(self):
        # four wide primitives per access, independent of r and b
        for depth in (2, 4, 8, 10):
            lay = yggdrasil_layout(depth)
            m = machine_for(lay)
            fs = FsRam(m, lay)
            before = m.cost_report()
            fs.read(0)
            d = m.cost_report().delta(before)
            assert (d.wide_mem, d.wide_alu) == (3, 1)
            before = m.cost_report()
            fs.write(lay.r - 1, 1)
            d = m.cost_report().delta(before)
            assert (d.wide_mem, d.wide_alu) == (3, 1)


def random_layout(rng, cfg):
    r = rng.randint(1, 12)
    b = rng.randint(1, min(8, cfg.k, cfg.w))
    n_bits = rng.randint(b, 24)
    rows = []
    for _ in range(r):
        rows.append(tuple(rng.sample(range(n_bits), b)))
    return FsRamLayout(r=r, b=b, n_bits=n_bits, table=tuple(rows))


class TestOverlapSemantics:
    def test_random_interleavings_match_flat_map(self, rng):
        for _ in range(60):
            cfg = uw.WideConfig(16, 16)
            lay = random_layout(rng, cfg)
            fs = FsRam(machine_for(lay, cfg), lay)
            flat = {}
            for _ in range(120):
                t = rng.randrange(lay.r)
                if rng.random() < 0.5:
                    v = rng.randrange(1 << lay.b)
                    fs.write(t, v)
                    for j in range(lay.b):
                        flat[lay.table[t][j]] = (v >> j) & 1
                else:
                    want = 0
                    for j in range(lay.b):
                        want |= flat.get(lay.table[t][j], 0) << j
                    assert fs.read(t) == want
