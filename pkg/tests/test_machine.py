import random

import pytest

import uwword as uw


def fresh(cfg=None, size=256):
    return uw.Machine(cfg or uw.WideConfig(8, 4), size)


class TestReads:
    def test_read_word(self):
        m = fresh()
        m.mem[:4] = [10, 20, 30, 40]
        assert m.read_word(0).limbs() == [10, 20, 30, 40]

    def test_read_content_gather(self):
        m = fresh()
        m.mem[:4] = [10, 20, 30, 40]
        w = uw.wide_from_limbs(m.cfg, [2, 0, 1, 3])
        assert m.read_content(w, 0).limbs() == [30, 10, 20, 40]

    def test_read_block(self):
        m = fresh()
        m.mem[7] = 99
        got = m.read_block(m.zero(), 2, 5)
        assert got.limbs() == [0, 0, 99, 0]

    def test_concurrent_reads_allowed(self):
        m = fresh()
        m.mem[3] = 7
        w = uw.wide_from_limbs(m.cfg, [3, 3, 3, 3])
        assert m.read_content(w, 0).limbs() == [7, 7, 7, 7]

    def test_out_of_bounds(self):
        m = fresh(size=4)
        with pytest.raises(uw.MemoryFault):
            m.read_word(1)
        with pytest.raises(uw.MemoryFault):
            m.read_content(uw.wide_from_limbs(m.cfg, [0, 0, 0, 200]), 0)


class TestWrites:
    def test_write_word(self):
        m = fresh()
        m.write_word(uw.wide_from_limbs(m.cfg, [1, 2, 3, 4]), 0)
        assert m.mem[:4] == [1, 2, 3, 4]

    def test_scatter(self):
        m = uw.Machine(uw.WideConfig(8, 2), 16)
        m.write_content(uw.wide_from_limbs(m.cfg, [7, 8]),
                        uw.wide_from_limbs(m.cfg, [1, 0]), 0)
        assert m.mem[0] == 8 and m.mem[1] == 7

    def test_crew_violation_names_blocks(self):
        m = uw.Machine(uw.WideConfig(8, 2), 16)
        with pytest.raises(uw.CrewViolation) as e:
            m.write_content(uw.wide_from_limbs(m.cfg, [7, 8]),
                            uw.wide_from_limbs(m.cfg, [3, 3]), 0)
        assert e.value.blocks == (0, 1) and e.value.address == 3

    def test_word_roundtrip_identity(self, rng):
        m = fresh()
        m.mem[:8] = [rng.randrange(256) for _ in range(8)]
        snapshot = list(m.mem)
        m.write_word(m.read_word(2), 2)
        assert m.mem == snapshot

    def test_content_roundtrip_permutation(self, rng):
        cfg = uw.WideConfig(16, 16)
        m = uw.Machine(cfg, 64)
        for _ in range(50):
            perm = list(range(16))
            rng.shuffle(perm)
            v = uw.wide_from_limbs(cfg, perm)
            w = uw.wide_from_limbs(cfg, [rng.randrange(1 << 16) for _ in range(16)])
            m.write_content(w, v, 0)
            assert m.read_content(v, 0).value == w.value


class TestCounters:
    def test_fresh_zero(self):
        assert fresh().cost_report().as_dict() == {
            "wide_alu": 0, "wide_mem": 0, "scalar_alu": 0, "scalar_mem": 0}

    def test_one_unit_per_mem_op(self):
        m = fresh()
        m.read_word(0)
        assert m.cost_report().wide_mem == 1

    def test_unit_cost_alu(self):
        m = fresh()
        m.compress(m.zero())
        m.spread(m.zero())
        assert m.cost_report().wide_alu == 2

    def test_counts_match_call_replay(self, rng):
        m = fresh(size=64)
        calls = 0
        for _ in range(100):
            op = rng.randrange(4)
            if op == 0:
                m.read_word(rng.randrange(32))
            elif op == 1:
                m.write_word(m.zero(), rng.randrange(32))
            elif op == 2:
                m.w_add(m.zero(), m.zero())
            else:
                m.load(rng.randrange(64))
            calls += 1
        c = m.cost_report()
        assert c.total == calls

    def test_snapshot_does_not_mutate(self):
        m = fresh()
        m.read_word(0)
        snap = m.cost_report()
        m.read_word(0)
        assert snap.wide_mem == 1 and m.cost_report().wide_mem == 2


def test_dispatch_wrappers():
    m = fresh()
    m.mem[:4] = [5, 6, 7, 8]
    assert uw.mem_read("word", m, m.zero(), 0).limbs() == [5, 6, 7, 8]
    uw.mem_write("block", m, uw.wide_from_limbs(m.cfg, [0, 9]), 8, j=1)
    assert m.mem[9] == 9
    with pytest.raises(ValueError):
        uw.mem_read("bogus", m, m.zero(), 0)


def test_memory_fixed_size():
    m = fresh(size=8)
    with pytest.raises(uw.MemoryFault):
        m.store(8, 1)
    with pytest.raises(ValueError):
        m.store(0, 256)
