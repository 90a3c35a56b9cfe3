"""Timed size sweeps over the seven streaming tests.

Each size allocates deterministically seeded inputs, runs untimed warmup
invocations, then times a batch of trials between two host monotonic
clock reads. Kernel output is validated against the sequential reference
once per size, on fresh buffers, outside the timed region.
"""

import time
from dataclasses import dataclass

import numpy as np

from . import reference
from .core import BS_TESTS, bytes_moved
from .gs import bs6_gather, bs7_scatter
from .kernels import (DEFAULT_REDUCTION, ReductionConfig, bs1_copy, bs2_axpy,
                      bs3_norm2, bs4_dot, bs5_fused_cg_update)
from .mesh import build_gather, build_mesh, build_scatter_ids


@dataclass(frozen=True)
class BandwidthSample:
    """One measurement point of a sweep."""

    test: str
    bytes: int          # bytes moved by a single invocation
    elapsed: float      # seconds for the whole trial batch
    trials: int
    bandwidth: float    # GB/s (10^9 bytes/s): bytes*trials/elapsed/1e9
    n: int | None = None        # element count, bs1-bs5 only
    order: int | None = None    # polynomial order, bs6/bs7 only
    K: int | None = None        # elements per axis, bs6/bs7 only
    nl: int | None = None
    ng: int | None = None


@dataclass
class SweepPlan:
    """What to measure: one test over an ascending list of sizes.

    sizes holds element counts for bs1-bs5 and (K, order) pairs for
    bs6/bs7.
    """

    test: str
    sizes: list
    trials: int = 20
    warmup: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.test not in BS_TESTS:
            raise ValueError(f"unknown test id {self.test!r}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.warmup < 0:
            raise ValueError(f"warmup must be >= 0, got {self.warmup}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if not self.sizes:
            raise ValueError("sizes must be non-empty")
        if any(self.sizes[i] >= self.sizes[i + 1] for i in range(len(self.sizes) - 1)):
            raise ValueError("sizes must be strictly ascending")
        if self.test in ("bs6", "bs7"):
            if any(len(s) != 2 or s[0] < 1 or s[1] < 1 for s in self.sizes):
                raise ValueError("bs6/bs7 sizes must be (K, order) pairs, both >= 1")
        elif any(s < 1 for s in self.sizes):
            raise ValueError("element counts must be >= 1")


class SweepError(RuntimeError):
    """A sweep aborted; samples collected so far are preserved on .samples."""

    def __init__(self, message, size, samples):
        super().__init__(f"{message} (at size {size})")
        self.size = size
        self.samples = samples


def geometric_sizes(min_n: int, max_n: int, points: int) -> list[int]:
    """Rounded geometric progression from min_n to max_n, strictly ascending.

    Rounding collisions are bumped to the next unused integer, so the
    result has exactly `points` distinct values whenever the range is wide
    enough (fewer only when max_n - min_n + 1 < points).
    """
    if not 1 <= min_n <= max_n:
        raise ValueError(f"need 1 <= min_n <= max_n, got {min_n}..{max_n}")
    if points < 1:
        raise ValueError(f"points must be >= 1, got {points}")
    if points == 1:
        return [min_n]
    grid = np.exp(np.linspace(np.log(min_n), np.log(max_n), points))
    sizes: list[int] = []
    prev = min_n - 1
    for v in grid:
        nv = max(int(np.rint(v)), prev + 1)
        if nv > max_n:
            break
        sizes.append(nv)
        prev = nv
    return sizes


def _uniform(rng, n):
    return rng.uniform(-1.0, 1.0, n)


class _VectorCase:
    """Setup/run/validate for one (test, n) point of a bs1-bs5 sweep."""

    def __init__(self, test, n, seed, cfg):
        self.test, self.n, self.seed, self.cfg = test, n, seed, cfg

    def alloc(self):
        rng = np.random.default_rng([self.seed, self.n])
        n = self.n
        if self.test == "bs1":
            return {"x": _uniform(rng, n), "y": np.zeros(n)}
        if self.test == "bs2":
            return {"alpha": rng.uniform(-1, 1), "beta": rng.uniform(-1, 1),
                    "x": _uniform(rng, n), "y": _uniform(rng, n),
                    "y0": None}
        if self.test == "bs3":
            return {"x": _uniform(rng, n)}
        if self.test == "bs4":
            return {"x": _uniform(rng, n), "y": _uniform(rng, n)}
        # bs5
        return {"alpha": rng.uniform(-1, 1), "p": _uniform(rng, n),
                "ap": _uniform(rng, n), "x": _uniform(rng, n),
                "r": _uniform(rng, n), "x0": None, "r0": None}

    def run(self, s):
        if self.test == "bs1":
            bs1_copy(s["x"], s["y"])
        elif self.test == "bs2":
            bs2_axpy(s["alpha"], s["x"], s["beta"], s["y"])
        elif self.test == "bs3":
            s["result"] = bs3_norm2(s["x"], self.cfg)
        elif self.test == "bs4":
            s["result"] = bs4_dot(s["x"], s["y"], self.cfg)
        else:
            s["result"] = bs5_fused_cg_update(s["alpha"], s["p"], s["ap"],
                                              s["x"], s["r"], self.cfg)

    def snapshot(self, s):
        # keep pre-run copies of in-place outputs for validation
        if self.test == "bs2":
            s["y0"] = s["y"].copy()
        elif self.test == "bs5":
            s["x0"], s["r0"] = s["x"].copy(), s["r"].copy()

    def validate(self, s):
        if self.test == "bs1":
            return np.array_equal(s["y"], s["x"])
        if self.test == "bs2":
            return np.array_equal(s["y"],
                                  reference.axpy(s["alpha"], s["x"],
                                                 s["beta"], s["y0"]))
        if self.test == "bs3":
            truth = reference.norm2(s["x"])
            return reference.relative_error(s["result"], truth) <= 1e-12
        if self.test == "bs4":
            truth = reference.dot(s["x"], s["y"])
            return reference.relative_error(s["result"], truth) <= 1e-12
        x_ref, r_ref, rr_ref = reference.fused_cg_update(
            s["alpha"], s["p"], s["ap"], s["x0"], s["r0"])
        return (np.array_equal(s["x"], x_ref)
                and np.array_equal(s["r"], r_ref)
                and reference.relative_error(s["result"], rr_ref) <= 1e-12)

    def describe(self, nbytes, elapsed, trials):
        return BandwidthSample(test=self.test, bytes=nbytes, elapsed=elapsed,
                               trials=trials,
                               bandwidth=nbytes * trials / elapsed / 1e9,
                               n=self.n)

    @property
    def nbytes(self):
        return bytes_moved(self.test, n=self.n)


class _MeshCase:
    """Setup/run/validate for one (K, order) point of a bs6/bs7 sweep."""

    def __init__(self, test, K, order, seed, nodes_per_block):
        self.test, self.K, self.order, self.seed = test, K, order, seed
        self.mesh = build_mesh(K, order)
        if test == "bs6":
            self.op = build_gather(self.mesh, nodes_per_block)
        else:
            self.ids = build_scatter_ids(self.mesh)

    def alloc(self):
        rng = np.random.default_rng([self.seed, self.K, self.order])
        if self.test == "bs6":
            return {"q_local": _uniform(rng, self.mesh.nl)}
        return {"q_global": _uniform(rng, self.mesh.ng),
                "q_local": np.zeros(self.mesh.nl)}

    def run(self, s):
        if self.test == "bs6":
            s["result"] = bs6_gather(self.op, s["q_local"])
        else:
            bs7_scatter(self.ids, s["q_global"], s["q_local"])

    def snapshot(self, s):
        pass

    def validate(self, s):
        if self.test == "bs6":
            truth = reference.gather(self.mesh.local_to_global, self.mesh.ng,
                                     s["q_local"])
            return np.allclose(s["result"], truth, rtol=1e-12, atol=1e-14)
        return np.array_equal(s["q_local"],
                              s["q_global"][self.mesh.local_to_global])

    def describe(self, nbytes, elapsed, trials):
        return BandwidthSample(test=self.test, bytes=nbytes, elapsed=elapsed,
                               trials=trials,
                               bandwidth=nbytes * trials / elapsed / 1e9,
                               order=self.order, K=self.K,
                               nl=self.mesh.nl, ng=self.mesh.ng)

    @property
    def nbytes(self):
        return bytes_moved(self.test, nl=self.mesh.nl, ng=self.mesh.ng)


def _make_case(plan, size, cfg, nodes_per_block):
    if plan.test in ("bs6", "bs7"):
        K, order = size
        return _MeshCase(plan.test, K, order, plan.seed, nodes_per_block)
    return _VectorCase(plan.test, size, plan.seed, cfg)


def run_sweep(plan: SweepPlan, cfg: ReductionConfig = DEFAULT_REDUCTION,
              nodes_per_block: int = 512) -> list[BandwidthSample]:
    """Measure every size in the plan; returns one sample per size, ascending."""
    samples: list[BandwidthSample] = []
    for size in plan.sizes:
        try:
            case = _make_case(plan, size, cfg, nodes_per_block)
            state = case.alloc()
        except MemoryError:
            raise SweepError("allocation failed", size, samples) from None

        for _ in range(plan.warmup):
            case.run(state)
        t_start = time.perf_counter()
        for _ in range(plan.trials):
            case.run(state)
        t_stop = time.perf_counter()
        elapsed = t_stop - t_start
        if elapsed <= 0.0:
            raise SweepError("clock reported non-positive elapsed time",
                             size, samples)

        # validate one invocation on fresh identically-seeded buffers
        check = case.alloc()
        case.snapshot(check)
        case.run(check)
        if not case.validate(check):
            raise SweepError(
                f"{plan.test} output failed validation against the "
                "sequential reference", size, samples)

        samples.append(case.describe(case.nbytes, elapsed, plan.trials))
    return samples
