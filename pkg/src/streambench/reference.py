"""Independent reference implementations used to validate kernel output.

Elementwise references evaluate the defining expression in one pass over
the whole array (each element is a single rounded multiply-add chain, so
they are bit-for-bit the sequential loop). Reductions use compensated
summation (math.fsum), whose error is below any tolerance asserted
against it.
"""

import math

import numpy as np

from .core import DVector


def copy(x: DVector) -> DVector:
    return x.copy()


def axpy(alpha: float, x: DVector, beta: float, y: DVector) -> DVector:
    return alpha * x + beta * y


def norm2(x: DVector) -> float:
    return math.fsum((x * x).tolist())


def dot(x: DVector, y: DVector) -> float:
    return math.fsum((x * y).tolist())


def fused_cg_update(alpha: float, p: DVector, ap: DVector,
                    x: DVector, r: DVector) -> tuple[DVector, DVector, float]:
    """Unfused composition of the two axpy updates plus the compensated norm."""
    x_new = axpy(alpha, p, 1.0, x)
    r_new = axpy(-alpha, ap, 1.0, r)
    return x_new, r_new, norm2(r_new)


def gather(local_to_global: np.ndarray, ng: int, q_local: DVector) -> DVector:
    """Sum local values onto their global ids (dense enumeration of Z^T)."""
    return np.bincount(local_to_global, weights=q_local, minlength=ng)


def gather_rowwise(row_starts: np.ndarray, col_ids: np.ndarray,
                   q_local: DVector) -> DVector:
    """Pure sequential per-row CSR sum, in stored column order."""
    out = np.zeros(row_starts.shape[0] - 1, dtype=np.float64)
    for r in range(out.shape[0]):
        acc = 0.0
        for c in range(row_starts[r], row_starts[r + 1]):
            acc += q_local[col_ids[c]]
        out[r] = acc
    return out


def scatter(ids: np.ndarray, q_global: DVector, q_local: DVector) -> DVector:
    """Sequential-loop semantics of the masked scatter, on a copy."""
    out = q_local.copy()
    keep = ids >= 0
    out[keep] = q_global[ids[keep]]
    return out


def relative_error(value: float, truth: float) -> float:
    if truth == 0.0:
        return abs(value)
    return abs(value - truth) / abs(truth)
