"""Self-contained correctness checks runnable from the command line.

Each check raises AssertionError on failure; the CLI reports pass/fail
counts. These mirror the oracle comparisons used by the test suite but
run at sizes small enough to finish in a few seconds.
"""

import numpy as np

from . import parallel, reference
from .cg import cg_solve, dense_spd_operator, diagonal_operator, random_spd_matrix
from .gs import bs6_gather, bs7_scatter
from .harness import BandwidthSample
from .kernels import (ReductionConfig, bs1_copy, bs2_axpy, bs3_norm2, bs4_dot,
                      bs5_fused_cg_update)
from .mesh import build_gather, build_mesh, build_scatter_ids, multiplicity
from .model import efficiency_point, fit_model, w_eff

_SIZES = [0, 1, 3, 255, 1000, 4097, 65537]
_CFG = ReductionConfig(block_size=256, n_blocks=512)


def _rng(tag: int):
    return np.random.default_rng([2024, tag])


def check_bs1_copy():
    for n in _SIZES:
        x = _rng(n).uniform(-1, 1, n)
        y = np.zeros(n)
        bs1_copy(x, y)
        assert np.array_equal(y, x), f"copy mismatch at n={n}"


def check_bs2_axpy():
    for n in _SIZES:
        rng = _rng(n)
        alpha, beta = rng.uniform(-2, 2, 2)
        x, y = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
        expect = reference.axpy(alpha, x, beta, y)
        bs2_axpy(alpha, x, beta, y)
        assert np.array_equal(y, expect), f"axpy mismatch at n={n}"


def check_bs3_norm():
    for n in _SIZES:
        x = _rng(n).uniform(-1, 1, n)
        got = bs3_norm2(x, _CFG)
        truth = reference.norm2(x)
        assert reference.relative_error(got, truth) <= 1e-12, \
            f"norm off at n={n}: {got} vs {truth}"


def check_bs4_dot():
    for n in _SIZES:
        rng = _rng(n)
        x, y = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
        got = bs4_dot(x, y, _CFG)
        truth = reference.dot(x, y)
        assert reference.relative_error(got, truth) <= 1e-12, \
            f"dot off at n={n}: {got} vs {truth}"
        assert bs4_dot(x, x, _CFG) == bs3_norm2(x, _CFG)


def check_bs5_fused_update():
    for n in _SIZES:
        rng = _rng(n)
        alpha = rng.uniform(-1, 1)
        p, ap = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
        x, r = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
        x_ref, r_ref, rr_ref = reference.fused_cg_update(alpha, p, ap, x, r)
        rr = bs5_fused_cg_update(alpha, p, ap, x, r, _CFG)
        assert np.array_equal(x, x_ref) and np.array_equal(r, r_ref), \
            f"fused update vectors diverge at n={n}"
        assert reference.relative_error(rr, rr_ref) <= 1e-12


def check_reduction_determinism():
    x = _rng(7).uniform(-1, 1, 100001)
    saved = parallel.num_workers()
    try:
        results = []
        for workers in (1, 4, parallel.max_workers()):
            parallel.set_num_workers(workers)
            results.append(bs3_norm2(x, _CFG))
        assert results[0] == results[1] == results[2], \
            f"reduction varies with worker count: {results}"
    finally:
        parallel.set_num_workers(saved)


def check_gather_scatter_identities():
    for K, p in [(1, 1), (2, 1), (2, 3), (3, 2)]:
        mesh = build_mesh(K, p)
        m = multiplicity(mesh)
        assert m.sum() == mesh.nl
        op = build_gather(mesh)
        ids = build_scatter_ids(mesh)
        assert np.array_equal(np.sort(op.col_ids), np.arange(mesh.nl))
        assert np.array_equal(bs6_gather(op, np.ones(mesh.nl)), m)
        q_global = _rng(K * 10 + p).uniform(-1, 1, mesh.ng)
        q_local = np.zeros(mesh.nl)
        bs7_scatter(ids, q_global, q_local)
        round_trip = bs6_gather(op, q_local)
        assert np.allclose(round_trip, m * q_global, rtol=1e-13, atol=1e-15), \
            f"gather(scatter(q)) != multiplicity*q for K={K}, p={p}"


def check_cg_convergence():
    n = 32
    rng = _rng(11)
    b = rng.uniform(-1, 1, n)
    res = cg_solve(lambda v: v.copy(), b, np.zeros(n), eps=1e-28, max_iter=10)
    assert res.converged and res.iterations == 1

    diag = np.repeat([1.0, 2.0, 3.0], 8)
    b = rng.uniform(-1, 1, 24)
    res = cg_solve(diagonal_operator(diag), b, np.zeros(24),
                   eps=1e-20, max_iter=24)
    assert res.converged and res.iterations <= 3

    a = random_spd_matrix(50, seed=3)
    b = rng.uniform(-1, 1, 50)
    res = cg_solve(dense_spd_operator(a), b, np.zeros(50),
                   eps=1e-20, max_iter=200)
    true_rr = float(((b - a @ res.x) ** 2).sum())
    assert res.converged and true_rr <= 1e-18 * float((b**2).sum())


def check_model_fit_recovery():
    t0, wmax = 5e-6, 8e11
    sizes = np.geomspace(1e3, 1e9, 60)
    samples = [BandwidthSample(test="bs1", bytes=int(b),
                               elapsed=(t0 + int(b) / wmax) * 20, trials=20,
                               bandwidth=0.0)
               for b in sizes]
    fit = fit_model(samples)
    assert reference.relative_error(fit.t0, t0) < 1e-10
    assert reference.relative_error(fit.wmax, wmax) < 1e-10
    assert fit.r2 == 1.0
    b80 = efficiency_point(fit, 0.8)
    assert reference.relative_error(b80, 4 * t0 * wmax) < 1e-12
    assert reference.relative_error(w_eff(fit, b80), 0.8 * wmax) < 1e-12


def check_fault_injection():
    raise AssertionError("deliberate failure (fault injection)")


CHECKS = [
    ("bs1_copy", check_bs1_copy),
    ("bs2_axpy", check_bs2_axpy),
    ("bs3_norm", check_bs3_norm),
    ("bs4_dot", check_bs4_dot),
    ("bs5_fused_update", check_bs5_fused_update),
    ("reduction_determinism", check_reduction_determinism),
    ("gather_scatter_identities", check_gather_scatter_identities),
    ("cg_convergence", check_cg_convergence),
    ("model_fit_recovery", check_model_fit_recovery),
]


def run_checks(inject_fault: bool = False, out=None) -> tuple[int, int]:
    """Run every check, print one line each; returns (passed, failed)."""
    import sys
    out = out or sys.stdout
    checks = list(CHECKS)
    if inject_fault:
        checks.append(("fault_injection", check_fault_injection))
    passed = failed = 0
    for name, fn in checks:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report any failure mode
            failed += 1
            print(f"FAIL {name}: {exc}", file=out)
        else:
            passed += 1
            print(f"ok   {name}", file=out)
    print(f"{passed} passed, {failed} failed", file=out)
    return passed, failed
