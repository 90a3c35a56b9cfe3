"""Conjugate Gradient driver composed entirely from the streaming kernels."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import DVector, check_same_length
from .kernels import (DEFAULT_REDUCTION, ReductionConfig, bs2_axpy, bs3_norm2,
                      bs4_dot, bs5_fused_cg_update)

ApplyOperator = Callable[[DVector], DVector]


class NotSPDError(ValueError):
    """The supplied operator produced p . Ap <= 0."""


@dataclass
class CGResult:
    x: DVector
    iterations: int
    final_rr: float
    converged: bool


def cg_solve(apply_a: ApplyOperator, b: DVector, x0: DVector,
             eps: float, max_iter: int,
             cfg: ReductionConfig = DEFAULT_REDUCTION,
             fused: bool = True, relative: bool = False) -> CGResult:
    """Solve A x = b, stopping when r.r <= eps (no square root, no normalization).

    With relative=True the tolerance becomes eps * (b.b). fused=False runs
    the x/r updates and the residual norm as three separate kernel passes;
    both paths produce bitwise-identical iterates under the same reduction
    config.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    check_same_length(b, x0)

    x = x0.copy()
    r = b.copy()
    ax = apply_a(x)
    check_same_length(b, ax)
    bs2_axpy(-1.0, ax, 1.0, r)  # r = b - A x
    p = r.copy()

    rr = bs3_norm2(r, cfg)
    tol = eps * bs3_norm2(b, cfg) if relative else eps

    iterations = 0
    while rr > tol and iterations < max_iter:
        ap = apply_a(p)
        pap = bs4_dot(p, ap, cfg)
        if pap <= 0.0:
            raise NotSPDError(f"p . Ap = {pap} at iteration {iterations}; "
                              "operator is not positive definite on this span")
        alpha = rr / pap
        if fused:
            rr_new = bs5_fused_cg_update(alpha, p, ap, x, r, cfg)
        else:
            bs2_axpy(alpha, p, 1.0, x)
            bs2_axpy(-alpha, ap, 1.0, r)
            rr_new = bs3_norm2(r, cfg)
        beta = rr_new / rr
        bs2_axpy(1.0, r, beta, p)  # p = r + beta*p
        rr = rr_new
        iterations += 1

    return CGResult(x=x, iterations=iterations, final_rr=rr,
                    converged=rr <= tol)


def diagonal_operator(diag: DVector) -> ApplyOperator:
    """Operator multiplying elementwise by a fixed positive diagonal."""
    d = np.asarray(diag, dtype=np.float64)

    def apply(v: DVector) -> DVector:
        return d * v

    return apply


def dense_spd_operator(matrix: np.ndarray) -> ApplyOperator:
    """Operator applying a dense symmetric positive definite matrix."""
    m = np.asarray(matrix, dtype=np.float64)

    def apply(v: DVector) -> DVector:
        return m @ v

    return apply


def random_spd_matrix(n: int, seed: int = 0) -> np.ndarray:
    """Well-conditioned random SPD test matrix M^T M + n*I."""
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n))
    return m.T @ m + n * np.eye(n)
