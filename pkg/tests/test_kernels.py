"""Kernel correctness against the sequential/compensated references."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from streambench import parallel, reference
from streambench.kernels import (ReductionConfig, bs1_copy, bs2_axpy, bs3_norm2,
                                 bs4_dot, bs5_fused_cg_update)

CFG = ReductionConfig(block_size=256, n_blocks=512)


@pytest.fixture(autouse=True)
def single_worker():
    parallel.set_num_workers(1)
    yield
    parallel.set_num_workers(1)


def rand(n, tag=0):
    return np.random.default_rng([n, tag]).uniform(-1.0, 1.0, n)


# --- reduction config -------------------------------------------------------

@pytest.mark.parametrize("bad", [0, 1, 3, 24, 100])
def test_block_size_must_be_power_of_two(bad):
    with pytest.raises(ValueError):
        ReductionConfig(block_size=bad, n_blocks=4)


def test_n_blocks_positive():
    with pytest.raises(ValueError):
        ReductionConfig(block_size=4, n_blocks=0)


# --- bs1 copy ---------------------------------------------------------------

def test_copy_small():
    x = np.array([1.0, 2.0, 3.0])
    y = np.zeros(3)
    bs1_copy(x, y)
    assert np.array_equal(y, [1.0, 2.0, 3.0])
    assert np.array_equal(x, [1.0, 2.0, 3.0])  # input untouched


def test_copy_empty():
    x = np.zeros(0)
    y = np.zeros(0)
    bs1_copy(x, y)
    assert y.size == 0


def test_copy_large_bitwise():
    x = rand(10**6)
    y = np.zeros(10**6)
    bs1_copy(x, y)
    assert np.array_equal(y, x)


def test_copy_length_mismatch():
    with pytest.raises(ValueError):
        bs1_copy(np.zeros(3), np.zeros(4))


# --- bs2 axpy ---------------------------------------------------------------

def test_axpy_identity():
    y = np.array([5.0, 6.0])
    bs2_axpy(0.0, np.array([9.0, 9.0]), 1.0, y)
    assert np.array_equal(y, [5.0, 6.0])


def test_axpy_hand_arithmetic():
    y = np.array([1.0])
    bs2_axpy(2.0, np.array([1.0]), 3.0, y)
    assert y[0] == 5.0


def test_axpy_matches_reference_bitwise():
    n = 4097
    x, y = rand(n, 1), rand(n, 2)
    expect = reference.axpy(-1.5, x, 0.25, y)
    bs2_axpy(-1.5, x, 0.25, y)
    assert np.array_equal(y, expect)


def test_axpy_matches_python_loop():
    # anchors the numpy reference to explicit per-element arithmetic
    rng = np.random.default_rng(5)
    x = rng.uniform(-1, 1, 257)
    y = rng.uniform(-1, 1, 257)
    alpha, beta = -0.7, 1.3
    loop = np.array([alpha * xi + beta * yi for xi, yi in zip(x, y)])
    bs2_axpy(alpha, x, beta, y)
    assert np.array_equal(y, loop)


def test_axpy_zero_vector_leaves_x():
    x = rand(100, 3)
    y = np.zeros(100)
    bs2_axpy(1.0, x, 1.0, y)
    assert np.array_equal(y, x)


def test_axpy_length_mismatch():
    with pytest.raises(ValueError):
        bs2_axpy(1.0, np.zeros(3), 1.0, np.zeros(4))


@settings(max_examples=25, deadline=None)
@given(alpha=st.floats(-10, 10), beta=st.floats(-10, 10),
       n=st.integers(0, 2000), seed=st.integers(0, 2**32 - 1))
def test_axpy_property_matches_reference(alpha, beta, n, seed):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1, 1, n)
    y = rng.uniform(-1, 1, n)
    expect = reference.axpy(alpha, x, beta, y)
    bs2_axpy(alpha, x, beta, y)
    assert np.array_equal(y, expect)


# --- bs3 norm ---------------------------------------------------------------

def test_norm_empty_is_zero():
    assert bs3_norm2(np.zeros(0), CFG) == 0.0


def test_norm_hand_arithmetic():
    assert bs3_norm2(np.array([3.0, 4.0]), CFG) == 25.0


def test_norm_matches_compensated_oracle():
    x = rand(100000, 4)
    got = bs3_norm2(x, CFG)
    truth = reference.norm2(x)
    assert reference.relative_error(got, truth) <= 1e-12


def test_norm_nonnegative_zero_iff_zero():
    assert bs3_norm2(np.zeros(1000), CFG) == 0.0
    x = np.zeros(1000)
    x[777] = 1e-150  # square stays representable
    assert bs3_norm2(x, CFG) > 0.0


@pytest.mark.parametrize("cfg", [ReductionConfig(2, 1), ReductionConfig(4, 3),
                                 ReductionConfig(64, 7), ReductionConfig(512, 512)])
def test_norm_any_config_matches_oracle(cfg):
    x = rand(12345, 5)
    truth = reference.norm2(x)
    assert reference.relative_error(bs3_norm2(x, cfg), truth) <= 1e-12


# --- bs4 dot ----------------------------------------------------------------

def test_dot_hand_arithmetic():
    assert bs4_dot(np.array([1.0, 2.0]), np.array([3.0, 4.0]), CFG) == 11.0


def test_dot_of_self_equals_norm_bitwise():
    x = rand(65537, 6)
    assert bs4_dot(x, x, CFG) == bs3_norm2(x, CFG)


def test_dot_matches_compensated_oracle():
    x, y = rand(65537, 7), rand(65537, 8)
    got = bs4_dot(x, y, CFG)
    truth = reference.dot(x, y)
    assert reference.relative_error(got, truth) <= 1e-12


def test_dot_symmetry_bitwise():
    x, y = rand(10000, 9), rand(10000, 10)
    assert bs4_dot(x, y, CFG) == bs4_dot(y, x, CFG)


def test_dot_length_mismatch():
    with pytest.raises(ValueError):
        bs4_dot(np.zeros(3), np.zeros(4), CFG)


# --- bs5 fused update -------------------------------------------------------

def test_fused_update_hand_arithmetic():
    x, r = np.array([0.0]), np.array([2.0])
    beta = bs5_fused_cg_update(1.0, np.array([1.0]), np.array([2.0]), x, r, CFG)
    assert x[0] == 1.0 and r[0] == 0.0 and beta == 0.0


def test_fused_update_alpha_zero_is_identity():
    n = 1000
    x, r = rand(n, 11), rand(n, 12)
    x0, r0 = x.copy(), r.copy()
    beta = bs5_fused_cg_update(0.0, rand(n, 13), rand(n, 14), x, r, CFG)
    assert np.array_equal(x, x0) and np.array_equal(r, r0)
    assert beta == bs3_norm2(r, CFG)


def test_fused_matches_unfused_composition():
    n = 10**5
    alpha = -0.875
    p, ap, x, r = rand(n, 15), rand(n, 16), rand(n, 17), rand(n, 18)
    x_ref, r_ref, rr_ref = reference.fused_cg_update(alpha, p, ap, x.copy(), r.copy())
    beta = bs5_fused_cg_update(alpha, p, ap, x, r, CFG)
    assert np.array_equal(x, x_ref)
    assert np.array_equal(r, r_ref)
    assert reference.relative_error(beta, rr_ref) <= 1e-12


def test_fused_update_length_mismatch():
    with pytest.raises(ValueError):
        bs5_fused_cg_update(1.0, np.zeros(3), np.zeros(3), np.zeros(3),
                            np.zeros(4), CFG)


# --- determinism ------------------------------------------------------------

def test_reductions_deterministic_across_worker_counts():
    x, y = rand(300001, 19), rand(300001, 20)
    expect_norm = expect_dot = None
    for workers in (1, 2, 4, parallel.max_workers()):
        parallel.set_num_workers(workers)
        norm = bs3_norm2(x, CFG)
        dot = bs4_dot(x, y, CFG)
        if expect_norm is None:
            expect_norm, expect_dot = norm, dot
        assert norm == expect_norm
        assert dot == expect_dot


def test_repeated_calls_bitwise_identical():
    x = rand(50000, 21)
    assert bs3_norm2(x, CFG) == bs3_norm2(x, CFG)


def test_elementwise_kernels_identical_across_worker_counts():
    n = 100001
    x, y = rand(n, 22), rand(n, 23)
    outputs = []
    for workers in (1, 3, parallel.max_workers()):
        parallel.set_num_workers(workers)
        yy = y.copy()
        bs2_axpy(0.3, x, -0.9, yy)
        outputs.append(yy)
    assert np.array_equal(outputs[0], outputs[1])
    assert np.array_equal(outputs[0], outputs[2])
