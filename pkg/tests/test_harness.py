"""Sweep planning, geometric size schedules, and the measurement loop."""

import numpy as np
import pytest

from streambench.core import bytes_moved
from streambench.harness import (BandwidthSample, SweepError, SweepPlan,
                                 geometric_sizes, run_sweep)
from streambench.kernels import ReductionConfig

CFG = ReductionConfig()


# --- geometric sizes --------------------------------------------------------

def test_degenerate_range():
    assert geometric_sizes(1, 1, 5) == [1]


def test_powers_of_two():
    assert geometric_sizes(1, 1024, 11) == [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]


def test_large_schedule_endpoints_and_count():
    sizes = geometric_sizes(10, 10**7, 400)
    assert sizes[0] == 10 and sizes[-1] == 10**7
    assert len(sizes) == 400
    assert all(a < b for a, b in zip(sizes, sizes[1:]))


def test_dedup_when_points_exceed_range():
    sizes = geometric_sizes(1, 16, 100)
    assert sizes[0] == 1 and sizes[-1] == 16
    assert len(sizes) == len(set(sizes)) <= 17


def test_single_point():
    assert geometric_sizes(7, 900, 1) == [7]


def test_invalid_bounds_rejected():
    with pytest.raises(ValueError):
        geometric_sizes(0, 10, 5)
    with pytest.raises(ValueError):
        geometric_sizes(10, 5, 5)
    with pytest.raises(ValueError):
        geometric_sizes(1, 10, 0)


# --- plan validation --------------------------------------------------------

def test_plan_rejects_unknown_test():
    with pytest.raises(ValueError):
        SweepPlan(test="bs8", sizes=[10])


def test_plan_rejects_non_ascending_sizes():
    with pytest.raises(ValueError):
        SweepPlan(test="bs1", sizes=[10, 10])
    with pytest.raises(ValueError):
        SweepPlan(test="bs1", sizes=[20, 10])


def test_plan_rejects_bad_counts():
    with pytest.raises(ValueError):
        SweepPlan(test="bs1", sizes=[10], trials=0)
    with pytest.raises(ValueError):
        SweepPlan(test="bs1", sizes=[10], warmup=-1)
    with pytest.raises(ValueError):
        SweepPlan(test="bs1", sizes=[0])
    with pytest.raises(ValueError):
        SweepPlan(test="bs1", sizes=[10], seed=-3)


def test_plan_mesh_sizes_are_pairs():
    SweepPlan(test="bs6", sizes=[(2, 7), (3, 7)])
    with pytest.raises(ValueError):
        SweepPlan(test="bs6", sizes=[(0, 7)])


# --- sweeps -----------------------------------------------------------------

def test_bs1_single_size_accounting():
    plan = SweepPlan(test="bs1", sizes=[1000], trials=20, warmup=1, seed=0)
    samples = run_sweep(plan, CFG)
    assert len(samples) == 1
    s = samples[0]
    assert s.test == "bs1" and s.bytes == 16000 and s.trials == 20
    assert s.n == 1000 and s.order is None and s.K is None
    assert s.elapsed > 0
    assert s.bandwidth == pytest.approx(s.bytes * s.trials / s.elapsed / 1e9)


@pytest.mark.parametrize("test", ["bs1", "bs2", "bs3", "bs4", "bs5"])
def test_vector_sweeps_validate_and_account(test):
    plan = SweepPlan(test=test, sizes=[100, 1000, 10000], trials=3, seed=7)
    samples = run_sweep(plan, CFG)
    assert [s.n for s in samples] == [100, 1000, 10000]
    for s in samples:
        assert s.bytes == bytes_moved(test, n=s.n)
        assert np.isfinite(s.bandwidth) and s.bandwidth > 0


def test_same_seed_reproduces_bytes():
    plan = SweepPlan(test="bs3", sizes=[100, 5000], trials=2, seed=42)
    a = run_sweep(plan, CFG)
    b = run_sweep(plan, CFG)
    assert [s.bytes for s in a] == [s.bytes for s in b]


def test_bs6_sweep_accounting_over_orders():
    for order in range(1, 8):
        plan = SweepPlan(test="bs6", sizes=[(2, order)], trials=2, seed=1)
        (s,) = run_sweep(plan, CFG)
        nl = 8 * (order + 1) ** 3
        ng = (2 * order + 1) ** 3
        assert s.nl == nl and s.ng == ng and s.order == order and s.K == 2
        assert s.bytes == bytes_moved("bs6", nl=nl, ng=ng)


def test_bs7_sweep_runs_and_accounts():
    plan = SweepPlan(test="bs7", sizes=[(2, 3), (3, 3)], trials=2, seed=1)
    samples = run_sweep(plan, CFG)
    assert [s.K for s in samples] == [2, 3]
    for s in samples:
        assert s.bytes == bytes_moved("bs7", nl=s.nl, ng=s.ng)


def test_samples_ascend_and_carry_test_id():
    plan = SweepPlan(test="bs4", sizes=[64, 256, 1024], trials=2, seed=3)
    samples = run_sweep(plan, CFG)
    assert [s.bytes for s in samples] == sorted(s.bytes for s in samples)
    assert all(s.test == "bs4" for s in samples)


def test_sweep_error_preserves_partial_results(monkeypatch):
    import streambench.harness as harness

    real = harness._VectorCase.alloc
    calls = {"n": 0}

    def failing_alloc(self):
        calls["n"] += 1
        if self.n >= 1000:
            raise MemoryError("synthetic allocation failure")
        return real(self)

    monkeypatch.setattr(harness._VectorCase, "alloc", failing_alloc)
    plan = SweepPlan(test="bs1", sizes=[10, 100, 1000], trials=2)
    with pytest.raises(SweepError) as err:
        run_sweep(plan, CFG)
    assert err.value.size == 1000
    assert [s.n for s in err.value.samples] == [10, 100]


def test_validation_failure_aborts(monkeypatch):
    import streambench.harness as harness

    monkeypatch.setattr(harness._VectorCase, "validate", lambda self, s: False)
    plan = SweepPlan(test="bs1", sizes=[10], trials=1)
    with pytest.raises(SweepError):
        run_sweep(plan, CFG)
