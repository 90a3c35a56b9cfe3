"""The five pure vector streaming kernels (copy, axpy, norm, dot, fused update).

Reductions follow a fixed two-stage schedule: a grid-stride pass
accumulates into block_size * n_blocks lattice slots, a power-of-two tree
folds each block to one partial, and a single block of the same shape
folds the partials to a scalar. The accumulation order of every slot is a
function of (block_size, n_blocks) alone, so results are bitwise
reproducible across runs and worker counts.
"""

from dataclasses import dataclass

import numpy as np

from . import parallel
from .core import DVector, check_same_length


@dataclass(frozen=True)
class ReductionConfig:
    """Shape of the two-stage reduction (work-group size and partial count)."""

    block_size: int = 256
    n_blocks: int = 512

    def __post_init__(self):
        b = self.block_size
        # the in-block tree requires a power of two >= 2
        if b < 2 or (b & (b - 1)) != 0:
            raise ValueError(f"block_size must be a power of two >= 2, got {b}")
        if self.n_blocks < 1:
            raise ValueError(f"n_blocks must be >= 1, got {self.n_blocks}")


DEFAULT_REDUCTION = ReductionConfig()


def _accumulate_lattice(u: DVector, v: DVector, cfg: ReductionConfig) -> np.ndarray:
    """Grid-stride partial sums of u[i]*v[i] into an (n_blocks * block_size) lattice.

    Slot b*block_size + t accumulates indices t + b*block_size + c*stride for
    c = 0, 1, 2, ... in that order; chunk order never depends on the worker
    count, only slot ownership does.
    """
    bs, nb = cfg.block_size, cfg.n_blocks
    stride = bs * nb
    n = u.shape[0]
    lattice = np.zeros(stride, dtype=np.float64)

    def work(lo, hi):
        seg = lattice[lo:hi]
        base = 0
        while base + lo < n:
            a = base + lo
            b = min(base + hi, n)
            seg[: b - a] += u[a:b] * v[a:b]
            base += stride

    parallel.run_spans(lambda blo, bhi: work(blo * bs, bhi * bs), nb)
    return lattice


def _tree_fold(rows: np.ndarray) -> np.ndarray:
    """Power-of-two tree reduction along the last axis; returns one value per row."""
    k = rows.shape[-1] // 2
    while k > 1:
        rows[..., :k] += rows[..., k : 2 * k]
        k >>= 1
    return rows[..., 0] + rows[..., 1]


def _final_reduce(partials: np.ndarray, block_size: int) -> float:
    """Second-stage reduction: one block of block_size slots over the partials."""
    s = np.zeros(block_size, dtype=np.float64)
    n = partials.shape[0]
    base = 0
    while base < n:
        m = min(block_size, n - base)
        s[:m] += partials[base : base + m]
        base += block_size
    return float(_tree_fold(s))


def _reduce_product(u: DVector, v: DVector, cfg: ReductionConfig) -> float:
    lattice = _accumulate_lattice(u, v, cfg)
    partials = _tree_fold(lattice.reshape(cfg.n_blocks, cfg.block_size))
    return _final_reduce(partials, cfg.block_size)


def bs1_copy(x: DVector, y: DVector) -> None:
    """y = x."""
    n = check_same_length(x, y)
    parallel.run_spans(lambda lo, hi: y.__setitem__(slice(lo, hi), x[lo:hi]), n)


def bs2_axpy(alpha: float, x: DVector, beta: float, y: DVector) -> None:
    """y = alpha*x + beta*y, one multiply-add pair per element, in place."""
    n = check_same_length(x, y)

    def work(lo, hi):
        y[lo:hi] = alpha * x[lo:hi] + beta * y[lo:hi]

    parallel.run_spans(work, n)


def bs3_norm2(x: DVector, cfg: ReductionConfig = DEFAULT_REDUCTION) -> float:
    """Squared 2-norm sum(x[i]^2) via the fixed two-stage schedule."""
    return _reduce_product(x, x, cfg)


def bs4_dot(x: DVector, y: DVector, cfg: ReductionConfig = DEFAULT_REDUCTION) -> float:
    """Inner product sum(x[i]*y[i]) via the fixed two-stage schedule."""
    check_same_length(x, y)
    return _reduce_product(x, y, cfg)


def bs5_fused_cg_update(alpha: float, p: DVector, ap: DVector,
                        x: DVector, r: DVector,
                        cfg: ReductionConfig = DEFAULT_REDUCTION) -> float:
    """x += alpha*p; r -= alpha*ap; returns sum(r_new[i]^2).

    Saves one full read/write of r versus performing the two updates and
    the norm as separate passes.
    """
    n = check_same_length(p, ap, x, r)

    def work(lo, hi):
        x[lo:hi] += alpha * p[lo:hi]
        r[lo:hi] -= alpha * ap[lo:hi]

    parallel.run_spans(work, n)
    return _reduce_product(r, r, cfg)
