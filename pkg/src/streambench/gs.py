"""Gather (Z^T) and scatter (Z) streaming kernels over the mesh operators."""

import numpy as np

from . import parallel
from .core import DVector
from .mesh import GatherOp, ScatterIds


def bs6_gather(op: GatherOp, q_local: DVector) -> DVector:
    """out[r] = sum of q_local over row r's columns, in ascending column order.

    Work is parallelized over the operator's row blocks; every row is
    summed by exactly one worker, one rounded add per nonzero, so the
    output is bitwise reproducible.
    """
    if q_local.shape[0] != op.nl:
        raise ValueError(
            f"local vector length {q_local.shape[0]} != operator NL {op.nl}")
    out = np.zeros(op.ng, dtype=np.float64)
    row_starts = op.row_starts
    col_ids = op.col_ids
    block_starts = op.block_starts

    def work(b_lo, b_hi):
        r_lo = int(block_starts[b_lo])
        r_hi = int(block_starts[b_hi])
        if r_lo == r_hi:
            return
        starts = row_starts[r_lo:r_hi].astype(np.int64)
        lengths = row_starts[r_lo + 1 : r_hi + 1].astype(np.int64) - starts
        seg = out[r_lo:r_hi]
        # step s adds each row's s-th entry; per-row order is sequential
        for s in range(int(lengths.max())):
            live = lengths > s
            seg[live] += q_local[col_ids[starts[live] + s]]

    parallel.run_spans(work, op.n_blocks)
    return out


def bs7_scatter(ids: ScatterIds, q_global: DVector, q_local: DVector) -> None:
    """q_local[n] = q_global[ids[n]] where ids[n] >= 0; masked entries untouched."""
    if q_local.shape[0] != ids.nl:
        raise ValueError(
            f"local vector length {q_local.shape[0]} != id count {ids.nl}")
    id_arr = ids.ids
    ng = q_global.shape[0]
    if id_arr.size and int(id_arr.max()) >= ng:
        raise ValueError(f"scatter id {int(id_arr.max())} out of range [0, {ng})")
    masked = ids.has_mask

    def work(lo, hi):
        seg = id_arr[lo:hi]
        if masked:
            keep = seg >= 0
            q_local[lo:hi][keep] = q_global[seg[keep]]
        else:
            q_local[lo:hi] = q_global[seg]

    parallel.run_spans(work, ids.nl)
