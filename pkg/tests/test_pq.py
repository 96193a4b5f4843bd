import random

import pytest

import uwword as uw
from uwword.oracles import oracle_set


class TestBasics:
    def test_spec_trace(self):
        q = uw.PriorityQueue.create(16)
        for x in (3, 9, 12):
            q.insert(x)
        assert q.min() == 3
        assert q.successor(3) == 9
        assert q.successor(12) is None
        q.delete(3)
        assert sorted(x for x in range(16) if x in q) == [9, 12]

    def test_empty_min(self):
        assert uw.PriorityQueue.create(16).min() is None

    def test_delete_absent_errors(self):
        q = uw.PriorityQueue.create(16)
        with pytest.raises(uw.UwwordError):
            q.delete(5)

    def test_insert_present_noop(self):
        q = uw.PriorityQueue.create(16)
        q.insert(4)
        q.insert(4)
        assert len(q) == 1
        q.delete(4)
        assert len(q) == 0

    def test_singleton(self):
        q = uw.PriorityQueue.create(64)
        q.insert(9)
        assert q.min() == 9
        assert q.successor(8) == 9
        assert q.successor(9) is None

    def test_dispatch_wrappers(self):
        q = uw.PriorityQueue.create(16)
        uw.pq_modify(q, "insert", 5)
        assert uw.pq_query(q, "min") == 5
        assert uw.pq_query(q, "successor", 4) == 5
        with pytest.raises(ValueError):
            uw.pq_modify(q, "bogus", 1)


class TestInverse:
    def test_insert_delete_restores_bit_store(self, rng):
        q = uw.PriorityQueue.create(64)
        for x in rng.sample(range(64), 17):
            q.insert(x)
        ne = list(q.nonempty.peek_bits())
        sp = list(q.split.peek_bits())
        x = next(v for v in range(64) if v not in q)
        q.insert(x)
        q.delete(x)
        assert q.nonempty.peek_bits() == ne
        assert q.split.peek_bits() == sp


def run_trace(q, trace):
    out = []
    for op in trace:
        if op[0] == "insert":
            q.insert(op[1])
            out.append(None)
        elif op[0] == "delete":
            try:
                q.delete(op[1])
                out.append(None)
            except uw.UwwordError:
                out.append("error")
        elif op[0] == "min":
            out.append(q.min())
        else:
            out.append(q.successor(op[1]))
    return out


def random_trace(rng, universe, n_ops):
    trace = []
    present = set()
    for _ in range(n_ops):
        r = rng.random()
        if r < 0.4:
            x = rng.randrange(universe)
            trace.append(("insert", x))
            present.add(x)
        elif r < 0.62:
            if present and rng.random() < 0.8:
                x = rng.choice(sorted(present))
                present.discard(x)
            else:
                x = rng.randrange(universe)
                present.discard(x)
            trace.append(("delete", x))
        elif r < 0.8:
            trace.append(("min",))
        else:
            trace.append(("successor", rng.randrange(universe)))
    return trace


class TestTraceEquivalence:
    @pytest.mark.parametrize("universe", [4, 16, 64, 256])
    def test_matches_sorted_set(self, universe, rng):
        trace = random_trace(rng, universe, 1500)
        q = uw.PriorityQueue.create(universe)
        assert run_trace(q, trace) == oracle_set(trace, universe)

    def test_dense_churn(self, rng):
        universe = 32
        q = uw.PriorityQueue.create(universe)
        trace = []
        for _ in range(800):
            trace.append(("insert", rng.randrange(universe)))
            trace.append(("successor", rng.randrange(universe)))
            if rng.random() < 0.7:
                trace.append(("delete", rng.randrange(universe)))
            trace.append(("min",))
        assert run_trace(q, trace) == oracle_set(trace, universe)


class TestConstantCost:
    def test_bounded_op_cost_across_universes(self, rng):
        worst = 0
        for universe in (16, 256, 1024):
            q = uw.PriorityQueue.create(universe)
            trace = random_trace(rng, universe, 600)
            for op in trace:
                before = q.machine.cost_report()
                run_trace(q, [op])
                worst = max(worst, q.machine.cost_report().delta(before).total)
        assert worst <= 64
